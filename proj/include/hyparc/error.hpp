#pragma once

#include <stdexcept>
#include <string>

namespace hyparc {

/// Failure categories; the CLI maps them onto exit codes 1, 2 and 3.
enum class ErrorKind { usage, budget, contract };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error usage_error(const std::string& what) { return {ErrorKind::usage, what}; }
inline Error budget_error(const std::string& what) { return {ErrorKind::budget, what}; }
inline Error contract_error(const std::string& what) { return {ErrorKind::contract, what}; }

}  // namespace hyparc
