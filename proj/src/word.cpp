#include "hyparc/word.hpp"

#include <algorithm>

namespace hyparc {

GroupWord inverse(const GroupWord& w) {
  GroupWord out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(inverse(*it));
  return out;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  out.letters.reserve(w.size());
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == inverse(l))
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

GroupWord cyclic_reduce(const GroupWord& w) {
  GroupWord r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r.letters[lo] == inverse(r.letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return GroupWord{{r.letters.begin() + static_cast<long>(lo),
                    r.letters.begin() + static_cast<long>(hi)}};
}

bool shortlex_less(const GroupWord& a, const GroupWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a.letters[i]), rb = letter_rank(b.letters[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

}  // namespace hyparc
