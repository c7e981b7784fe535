// Exact normal forms for free products of free abelian groups. A free group
// is the product of rank-one factors; a free abelian group is a single factor.

#include <algorithm>

#include "hyparc/presentation.hpp"

namespace hyparc {
namespace {

class FreeProductBackend final : public WordBackend {
 public:
  FreeProductBackend(int rank, std::vector<std::vector<int>> factors, BackendTag tag)
      : factors_(std::move(factors)), tag_(tag) {
    block_of_.assign(static_cast<std::size_t>(rank), -1);
    slot_of_.assign(static_cast<std::size_t>(rank), -1);
    for (std::size_t b = 0; b < factors_.size(); ++b)
      for (std::size_t i = 0; i < factors_[b].size(); ++i) {
        block_of_[static_cast<std::size_t>(factors_[b][i])] = static_cast<int>(b);
        slot_of_[static_cast<std::size_t>(factors_[b][i])] = static_cast<int>(i);
      }
  }

  BackendTag tag() const override { return tag_; }
  Element identity() const override { return {}; }

  // Syllables are stored as [exponents..., block id] so the last one can be
  // located from the back.
  Element multiply(const Element& e, Letter l) const override {
    int g = generator_of(l);
    int b = block_of_[static_cast<std::size_t>(g)];
    int slot = slot_of_[static_cast<std::size_t>(g)];
    auto width = static_cast<long>(factors_[static_cast<std::size_t>(b)].size());
    Element out = e;
    int delta = l > 0 ? 1 : -1;
    if (!out.empty() && out.back() == b) {
      auto start = static_cast<long>(out.size()) - 1 - width;
      out[static_cast<std::size_t>(start + slot)] += delta;
      bool zero = std::all_of(out.begin() + start, out.end() - 1, [](auto v) { return v == 0; });
      if (zero) out.resize(static_cast<std::size_t>(start));
      return out;
    }
    for (long i = 0; i < width; ++i) out.push_back(i == slot ? delta : 0);
    out.push_back(b);
    return out;
  }

  GroupWord normal_form(const GroupWord& w) const override {
    Element e = element(w);
    // Decode syllables front to back: walk from the back collecting them.
    std::vector<std::pair<long, long>> spans;  // [start, block)
    long end = static_cast<long>(e.size());
    while (end > 0) {
      long b = e[static_cast<std::size_t>(end - 1)];
      long width = static_cast<long>(factors_[static_cast<std::size_t>(b)].size());
      spans.emplace_back(end - 1 - width, b);
      end -= width + 1;
    }
    GroupWord out;
    for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
      auto [start, b] = *it;
      const auto& gens = factors_[static_cast<std::size_t>(b)];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        auto ex = e[static_cast<std::size_t>(start) + i];
        auto letter = static_cast<Letter>(gens[i] + 1);
        for (long k = 0; k < (ex > 0 ? ex : -ex); ++k)
          out.letters.push_back(ex > 0 ? letter : inverse(letter));
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<int>> factors_;
  std::vector<int> block_of_;
  std::vector<int> slot_of_;
  BackendTag tag_;
};

}  // namespace

std::shared_ptr<const WordBackend> make_free_product_backend(
    int rank, const std::vector<std::vector<int>>& factors, BackendTag tag) {
  return std::make_shared<FreeProductBackend>(rank, factors, tag);
}

}  // namespace hyparc
