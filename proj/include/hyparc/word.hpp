#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hyparc {

/// A signed generator: +k is generator k-1, -k its inverse.
using Letter = std::int16_t;

inline Letter inverse(Letter l) { return static_cast<Letter>(-l); }
inline int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }

/// Position of a letter in the shortlex alphabet a < a^-1 < b < b^-1 < ...
inline int letter_rank(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }
inline Letter letter_from_rank(int rank) {
  auto g = static_cast<Letter>(rank / 2 + 1);
  return rank % 2 ? static_cast<Letter>(-g) : g;
}

struct GroupWord {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const GroupWord&) const = default;
};

GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& a, const GroupWord& b);
/// Cancels adjacent x x^-1 pairs.
GroupWord free_reduce(const GroupWord& w);
/// Free reduction followed by cancellation at the ends.
GroupWord cyclic_reduce(const GroupWord& w);

/// Strict shortlex order: shorter first, then lexicographic by letter_rank.
bool shortlex_less(const GroupWord& a, const GroupWord& b);

}  // namespace hyparc
