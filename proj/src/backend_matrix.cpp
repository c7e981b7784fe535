// Exact SL(2, Z[w]) keys for the figure-eight knot group, using the
// parabolic Riley representation x = [[1,1],[0,1]], y = [[1,0],[-w,1]].

#include <array>
#include <mutex>
#include <unordered_map>

#include "hyparc/cyclotomic.hpp"
#include "hyparc/error.hpp"
#include "hyparc/presentation.hpp"

namespace hyparc {
namespace {

struct Mat2 {
  std::array<ZOmega, 4> e{ZOmega{1, 0}, ZOmega{}, ZOmega{}, ZOmega{1, 0}};

  Mat2 operator*(const Mat2& o) const {
    Mat2 r;
    r.e[0] = e[0] * o.e[0] + e[1] * o.e[2];
    r.e[1] = e[0] * o.e[1] + e[1] * o.e[3];
    r.e[2] = e[2] * o.e[0] + e[3] * o.e[2];
    r.e[3] = e[2] * o.e[1] + e[3] * o.e[3];
    return r;
  }
  // Determinant one, so the inverse is the adjugate.
  Mat2 inverse() const {
    Mat2 r;
    r.e = {e[3], ZOmega{} - e[1], ZOmega{} - e[2], e[0]};
    return r;
  }
  bool operator==(const Mat2&) const = default;

  Element encode() const {
    Element k;
    for (const auto& z : e) {
      k.push_back(z.a);
      k.push_back(z.b);
    }
    return k;
  }
  static Mat2 decode(const Element& k) {
    Mat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.e[i] = {k[2 * i], k[2 * i + 1]};
    return m;
  }
};

class FigureEightBackend final : public WordBackend {
 public:
  FigureEightBackend(std::array<Mat2, 4> gens, std::size_t budget) : gens_(gens), budget_(budget) {
    words_.emplace(Mat2{}.encode(), GroupWord{});
    frontier_.push_back(Mat2{}.encode());
  }

  BackendTag tag() const override { return BackendTag::exact_matrix; }
  Element identity() const override { return Mat2{}.encode(); }
  Element multiply(const Element& e, Letter l) const override {
    return (Mat2::decode(e) * gens_[static_cast<std::size_t>(letter_rank(l))]).encode();
  }

  // Shortlex-least geodesic: grow the breadth-first ball until the element
  // appears. Discovery order makes the first word found shortlex-least.
  GroupWord normal_form(const GroupWord& w) const override {
    Element key = element(w);
    std::lock_guard lock(mutex_);
    while (true) {
      if (auto it = words_.find(key); it != words_.end()) return it->second;
      if (static_cast<int>(radius_) >= static_cast<int>(free_reduce(w).size()))
        throw contract_error("figure-eight backend: element not found within its word length");
      std::vector<Element> next;
      for (const Element& v : frontier_) {
        const GroupWord base = words_.at(v);
        for (std::size_t r = 0; r < 4; ++r) {
          Element u = multiply(v, letter_from_rank(static_cast<int>(r)));
          if (words_.count(u)) continue;
          GroupWord word = base;
          word.letters.push_back(letter_from_rank(static_cast<int>(r)));
          words_.emplace(u, word);
          next.push_back(std::move(u));
        }
      }
      frontier_ = std::move(next);
      ++radius_;
      if (words_.size() > budget_)
        throw budget_error("figure-eight ball exceeded vertex budget at radius " + std::to_string(radius_));
    }
  }

 private:
  std::array<Mat2, 4> gens_;
  std::size_t budget_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Element, GroupWord, ElementHash> words_;
  mutable std::vector<Element> frontier_;
  mutable std::size_t radius_ = 0;
};

}  // namespace

std::shared_ptr<const WordBackend> make_figure_eight_backend(const Presentation& p) {
  if (p.rank() != 2 || p.relators.size() != 1)
    throw usage_error("backend exact-matrix supports the two-generator one-relator figure-eight group");
  Mat2 x, y;
  x.e[1] = {1, 0};
  y.e[2] = {0, -1};
  for (bool swap : {false, true}) {
    std::array<Mat2, 2> g = swap ? std::array<Mat2, 2>{y, x} : std::array<Mat2, 2>{x, y};
    std::array<Mat2, 4> gens{g[0], g[0].inverse(), g[1], g[1].inverse()};
    Mat2 m;
    for (Letter l : p.relators[0].letters) m = m * gens[static_cast<std::size_t>(letter_rank(l))];
    if (m == Mat2{}) return std::make_shared<FigureEightBackend>(gens, 5'000'000);
  }
  throw usage_error("backend exact-matrix: relator does not map to the identity under the figure-eight representation");
}

}  // namespace hyparc
