// Dehn-algorithm backends for C'(1/6) presentations. The genus-2 surface
// group gets exact matrix keys; any other presentation falls back to a
// lazily grown ball whose vertices are compared with Dehn's algorithm.

#include <map>
#include <mutex>

#include "hyparc/error.hpp"
#include "hyparc/presentation.hpp"
#include "hyparc/surface.hpp"

namespace hyparc {
namespace {

// Corridor width, validated against full breadth-first balls in the tests.
constexpr double kCorridorSlack = 6.0;

class SurfaceBackend final : public WordBackend {
 public:
  explicit SurfaceBackend(SurfaceGroup g) : group_(std::move(g)) {}

  BackendTag tag() const override { return BackendTag::dehn; }
  Element identity() const override { return DiskIsometry{}.encode(); }
  Element multiply(const Element& e, Letter l) const override {
    return (DiskIsometry::decode(e) * group_.generator(l)).encode();
  }
  GroupWord normal_form(const GroupWord& w) const override {
    return group_.corridor_geodesic(free_reduce(w), kCorridorSlack);
  }
  // Matrix coefficients grow like exp(1.5 n); beyond this 64-bit overflow
  // becomes possible and is reported as a budget error.
  int reliable_radius() const override { return 24; }

  const SurfaceGroup& group() const { return group_; }

 private:
  SurfaceGroup group_;
};

class BallDehnBackend final : public WordBackend {
 public:
  BallDehnBackend(const Presentation& p, std::size_t budget)
      : sym_(symmetrize(p.relators)), rank_(p.rank()), budget_(budget) {
    use_sums_ = true;
    for (const auto& r : p.relators) {
      std::vector<long> s(static_cast<std::size_t>(rank_), 0);
      for (Letter l : r.letters) s[static_cast<std::size_t>(generator_of(l))] += l > 0 ? 1 : -1;
      for (long v : s) use_sums_ = use_sums_ && v == 0;
    }
    words_.push_back({});
    buckets_[invariant({})].push_back(0);
  }

  BackendTag tag() const override { return BackendTag::dehn; }
  Element identity() const override { return {0}; }
  bool thread_safe() const override { return false; }

  Element multiply(const Element& e, Letter l) const override {
    std::lock_guard lock(mutex_);
    GroupWord w = words_[static_cast<std::size_t>(e[0])];
    w.letters.push_back(l);
    return {static_cast<std::int64_t>(locate(w))};
  }

  GroupWord normal_form(const GroupWord& w) const override {
    std::lock_guard lock(mutex_);
    return words_[locate(w)];
  }

  int reliable_radius() const override {
    std::lock_guard lock(mutex_);
    return complete_;
  }

 private:
  std::vector<long> invariant(const GroupWord& w) const {
    std::vector<long> s(use_sums_ ? static_cast<std::size_t>(rank_) : 0, 0);
    if (use_sums_)
      for (Letter l : w.letters) s[static_cast<std::size_t>(generator_of(l))] += l > 0 ? 1 : -1;
    return s;
  }

  std::optional<std::size_t> find(const GroupWord& reduced, std::size_t max_len) const {
    auto it = buckets_.find(invariant(reduced));
    if (it == buckets_.end()) return std::nullopt;
    for (std::size_t idx : it->second) {
      const GroupWord& u = words_[idx];
      if (u.size() > max_len) continue;
      if (dehn_reduce(sym_, concat(inverse(u), reduced)).empty()) return idx;
    }
    return std::nullopt;
  }

  void grow_to(int radius) const {
    while (complete_ < radius) {
      std::size_t begin = sphere_start_, end = words_.size();
      for (std::size_t v = begin; v < end; ++v) {
        for (int r = 0; r < 2 * rank_; ++r) {
          GroupWord w = words_[v];
          w.letters.push_back(letter_from_rank(r));
          if (free_reduce(w).size() < w.size()) continue;
          GroupWord red = dehn_reduce(sym_, w);
          if (find(red, w.size())) continue;
          words_.push_back(w);
          buckets_[invariant(w)].push_back(words_.size() - 1);
          if (words_.size() > budget_)
            throw budget_error("Dehn ball exceeded vertex budget at radius " + std::to_string(complete_ + 1));
        }
      }
      sphere_start_ = end;
      ++complete_;
    }
  }

  // A Dehn-reduced word is no longer than a geodesic for its element by more
  // than a bounded factor, but the ball must reach its full length to be safe.
  std::size_t locate(const GroupWord& w) const {
    GroupWord red = dehn_reduce(sym_, w);
    grow_to(static_cast<int>(red.size()));
    auto idx = find(red, red.size());
    if (!idx) throw contract_error("Dehn backend failed to locate a reduced word in its ball");
    return *idx;
  }

  std::vector<GroupWord> sym_;
  int rank_;
  std::size_t budget_;
  bool use_sums_ = false;
  mutable std::mutex mutex_;
  mutable std::vector<GroupWord> words_;
  mutable std::map<std::vector<long>, std::vector<std::size_t>> buckets_;
  mutable int complete_ = 0;
  mutable std::size_t sphere_start_ = 0;
};

}  // namespace

std::shared_ptr<const WordBackend> make_dehn_backend(const Presentation& p, std::size_t vertex_budget) {
  if (auto g = SurfaceGroup::detect(p)) return std::make_shared<SurfaceBackend>(std::move(*g));
  return std::make_shared<BallDehnBackend>(p, vertex_budget);
}

const SurfaceGroup* surface_group(const Presentation& p) {
  auto* b = dynamic_cast<const SurfaceBackend*>(p.engine.get());
  return b ? &b->group() : nullptr;
}

}  // namespace hyparc
