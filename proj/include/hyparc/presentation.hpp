#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyparc/word.hpp"

namespace hyparc {

enum class BackendTag { free, free_abelian, free_product, dehn, exact_matrix };

std::string to_string(BackendTag tag);
std::optional<BackendTag> backend_from_string(std::string_view s);

/// Canonical encoding of a group element. Two words give equal Elements
/// iff they represent the same group element; the encoding is hashable and
/// totally ordered, so it doubles as a deduplication key.
using Element = std::vector<std::int64_t>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : e) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Word-problem engine behind a Presentation.
class WordBackend {
 public:
  virtual ~WordBackend() = default;

  virtual BackendTag tag() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& e, Letter l) const = 0;
  /// Shortlex-least geodesic representative.
  virtual GroupWord normal_form(const GroupWord& w) const = 0;
  /// Largest word length for which normal_form is exact.
  virtual int reliable_radius() const { return 1 << 30; }
  /// Whether distinct threads may call multiply concurrently.
  virtual bool thread_safe() const { return true; }

  Element element(const GroupWord& w) const;
  bool is_identity(const GroupWord& w) const { return element(w) == identity(); }
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<GroupWord> relators;
  /// Generator-index subsets; parabolic ones carry horoballs, hyperbolic ones
  /// contribute limit-set obstacles.
  std::vector<std::vector<int>> parabolic;
  std::vector<std::vector<int>> hyperbolic;
  BackendTag backend = BackendTag::free;
  bool case_inverses = false;
  std::shared_ptr<const WordBackend> engine;

  int rank() const { return static_cast<int>(generators.size()); }
  /// Letters in shortlex order a, a^-1, b, b^-1, ...
  std::vector<Letter> alphabet() const;

  GroupWord parse_word(std::string_view text) const;
  std::string format(const GroupWord& w) const;
  Element element(const GroupWord& w) const { return engine->element(w); }
};

/// Parses the presentation file format. Throws Error(usage) with line and
/// column on syntax errors and on backend incompatibility.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

/// Canonical normal form; throws Error(usage) for unknown generators.
GroupWord reduce(const Presentation& p, const GroupWord& w);

/// Maximal piece length divided by the length of the relator containing it,
/// over the symmetrized relator set.
double max_piece_ratio(const std::vector<GroupWord>& relators);

/// Symmetrized closure: all cyclic permutations of relators and inverses.
std::vector<GroupWord> symmetrize(const std::vector<GroupWord>& relators);

/// Dehn's algorithm: repeatedly replaces more than half of a relator by the
/// shorter complement. Returns the fully reduced word.
GroupWord dehn_reduce(const std::vector<GroupWord>& symmetrized, const GroupWord& w);

// Backend factories (defined next to their implementations).
std::shared_ptr<const WordBackend> make_free_product_backend(
    int rank, const std::vector<std::vector<int>>& factors, BackendTag tag);
std::shared_ptr<const WordBackend> make_dehn_backend(const Presentation& p,
                                                     std::size_t vertex_budget);
std::shared_ptr<const WordBackend> make_figure_eight_backend(const Presentation& p);

}  // namespace hyparc
