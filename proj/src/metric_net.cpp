#include "hyparc/metric_net.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "hyparc/error.hpp"

namespace hyparc {
namespace {

class ScanDistance final : public SetDistance {
 public:
  ScanDistance(const Net& net, std::vector<PointId> members) : net_(net), members_(std::move(members)) {}
  double operator()(PointId z) const override {
    double best = INFINITY;
    for (PointId m : members_) best = std::min(best, net_.dist(z, m));
    return best;
  }

 private:
  const Net& net_;
  std::vector<PointId> members_;
};

// Sup distance to the perimeter of an axis-aligned rectangle.
class PerimeterDistance final : public SetDistance {
 public:
  PerimeterDistance(const LatticeNet& net, long x0, long y0, long x1, long y1)
      : net_(net), x0_(x0), y0_(y0), x1_(x1), y1_(y1) {}
  double operator()(PointId z) const override {
    long x = net_.x(z), y = net_.y(z);
    long d;
    if (x < x0_ || x > x1_ || y < y0_ || y > y1_) {
      long dx = std::max({x0_ - x, x - x1_, 0L});
      long dy = std::max({y0_ - y, y - y1_, 0L});
      d = std::max(dx, dy);
    } else {
      d = std::min({x - x0_, x1_ - x, y - y0_, y1_ - y});
    }
    return static_cast<double>(d) * net_.spacing();
  }

 private:
  const LatticeNet& net_;
  long x0_, y0_, x1_, y1_;
};

// Members bucketed into square cells; queries scan rings of cells outward.
class BucketDistance final : public SetDistance {
 public:
  BucketDistance(const LatticeNet& net, const std::vector<PointId>& members) : net_(net) {
    for (PointId m : members) cells_[key(net.x(m) / kCell, net.y(m) / kCell)].push_back(m);
    max_ring_ = net.side() / kCell + 1;
  }
  double operator()(PointId z) const override {
    const long cx = net_.x(z) / kCell, cy = net_.y(z) / kCell;
    long best = -1;
    for (long ring = 0; ring <= max_ring_; ++ring) {
      // Anything in ring k is at least (k - 1) * kCell + 1 away.
      if (best >= 0 && (ring - 1) * kCell + 1 > best) break;
      for (long i = cx - ring; i <= cx + ring; ++i)
        for (long j = cy - ring; j <= cy + ring; ++j) {
          if (std::max(std::abs(i - cx), std::abs(j - cy)) != ring) continue;
          auto it = cells_.find(key(i, j));
          if (it == cells_.end()) continue;
          for (PointId m : it->second) {
            long d = std::max(std::abs(net_.x(m) - net_.x(z)), std::abs(net_.y(m) - net_.y(z)));
            if (best < 0 || d < best) best = d;
          }
        }
    }
    return best < 0 ? INFINITY : static_cast<double>(best) * net_.spacing();
  }

 private:
  static constexpr long kCell = 16;
  static long long key(long i, long j) { return (static_cast<long long>(i) << 32) ^ static_cast<long long>(j + (1L << 30)); }
  const LatticeNet& net_;
  std::unordered_map<long long, std::vector<PointId>> cells_;
  long max_ring_ = 0;
};

class ListSpan final : public SpanTracker {
 public:
  explicit ListSpan(const Net& net) : net_(net) {}
  void reset(PointId first) override {
    pts_.assign(1, first);
    diam_ = 0.0;
  }
  double add(PointId z) override {
    for (PointId p : pts_) diam_ = std::max(diam_, net_.dist(p, z));
    pts_.push_back(z);
    return diam_;
  }

 private:
  const Net& net_;
  std::vector<PointId> pts_;
  double diam_ = 0.0;
};

// Sup-metric diameter is the larger side of the bounding box.
class BoxSpan final : public SpanTracker {
 public:
  explicit BoxSpan(const LatticeNet& net) : net_(net) {}
  void reset(PointId first) override {
    x0_ = x1_ = net_.x(first);
    y0_ = y1_ = net_.y(first);
  }
  double add(PointId z) override {
    const long x = net_.x(z), y = net_.y(z);
    x0_ = std::min(x0_, x), x1_ = std::max(x1_, x);
    y0_ = std::min(y0_, y), y1_ = std::max(y1_, y);
    return static_cast<double>(std::max(x1_ - x0_, y1_ - y0_)) * net_.spacing();
  }

 private:
  const LatticeNet& net_;
  long x0_ = 0, x1_ = 0, y0_ = 0, y1_ = 0;
};

}  // namespace

std::unique_ptr<SpanTracker> Net::span_tracker() const { return std::make_unique<ListSpan>(*this); }
std::unique_ptr<SpanTracker> LatticeNet::span_tracker() const { return std::make_unique<BoxSpan>(*this); }

void Net::adjacent(PointId a, std::vector<PointId>& out) const {
  ball(a, resolution(), out);
  out.erase(std::remove(out.begin(), out.end(), a), out.end());
}

std::unique_ptr<SetDistance> Net::set_distance(const std::vector<PointId>& members) const {
  return std::make_unique<ScanDistance>(*this, members);
}

std::vector<PointId> Net::points() const {
  std::vector<PointId> out;
  for (PointId p = 0; p < id_bound(); ++p)
    if (contains(p)) out.push_back(p);
  return out;
}

DenseNet::DenseNet(std::size_t n, std::vector<double> d, double factor) : n_(n), d_(std::move(d)) {
  if (d_.size() != n * n) throw usage_error("distance matrix has the wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    double nearest = INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      diam_ = std::max(diam_, d_[i * n + j]);
      if (j != i) nearest = std::min(nearest, d_[i * n + j]);
    }
    if (n > 1) nn_ = std::max(nn_, nearest);
  }
  h_ = factor * nn_;
}

void DenseNet::ball(PointId a, double r, std::vector<PointId>& out) const {
  out.clear();
  const double* row = d_.data() + a * n_;
  for (std::size_t j = 0; j < n_; ++j)
    if (row[j] <= r) out.push_back(j);
}

DenseNet circle_net(std::size_t k) {
  std::vector<double> d(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      d[i * k + j] = 2.0 * std::abs(std::sin(std::numbers::pi * static_cast<double>(i > j ? i - j : j - i) /
                                             static_cast<double>(k)));
  return DenseNet(k, std::move(d));
}

LatticeNet::LatticeNet(long N, std::function<bool(long, long)> member) : N_(N) {
  if (N < 1) throw usage_error("lattice side must be positive");
  mask_.resize(id_bound());
  for (long j = 0; j <= N_; ++j)
    for (long i = 0; i <= N_; ++i) {
      bool in = member(i, j);
      mask_[static_cast<std::size_t>(id(i, j))] = in;
      count_ += in;
    }
}

std::size_t LatticeNet::count() const { return count_; }

double LatticeNet::dist(PointId a, PointId b) const {
  long d = std::max(std::abs(x(a) - x(b)), std::abs(y(a) - y(b)));
  return static_cast<double>(d) * spacing();
}

void LatticeNet::ball(PointId a, double r, std::vector<PointId>& out) const {
  out.clear();
  const long k = static_cast<long>(std::floor(r * static_cast<double>(N_) + 1e-9));
  const long ax = x(a), ay = y(a);
  for (long j = std::max(0L, ay - k); j <= std::min(N_, ay + k); ++j)
    for (long i = std::max(0L, ax - k); i <= std::min(N_, ax + k); ++i)
      if (inside(i, j)) out.push_back(id(i, j));
}

void LatticeNet::adjacent(PointId a, std::vector<PointId>& out) const {
  out.clear();
  const long ax = x(a), ay = y(a);
  for (long dy = -1; dy <= 1; ++dy)
    for (long dx = -1; dx <= 1; ++dx)
      if ((dx || dy) && member(ax + dx, ay + dy)) out.push_back(id(ax + dx, ay + dy));
}

std::unique_ptr<SetDistance> LatticeNet::set_distance(const std::vector<PointId>& members) const {
  if (members.empty()) throw usage_error("distance to an empty set");
  long x0 = N_, y0 = N_, x1 = 0, y1 = 0;
  for (PointId m : members) {
    x0 = std::min(x0, x(m)), x1 = std::max(x1, x(m));
    y0 = std::min(y0, y(m)), y1 = std::max(y1, y(m));
  }
  bool perimeter = x1 > x0 && y1 > y0 &&
                   members.size() == static_cast<std::size_t>(2 * (x1 - x0) + 2 * (y1 - y0));
  for (PointId m : members) {
    if (!perimeter) break;
    perimeter = x(m) == x0 || x(m) == x1 || y(m) == y0 || y(m) == y1;
  }
  if (perimeter) {
    std::vector<PointId> sorted(members);
    std::sort(sorted.begin(), sorted.end());
    perimeter = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }
  if (perimeter) return std::make_unique<PerimeterDistance>(*this, x0, y0, x1, y1);
  return std::make_unique<BucketDistance>(*this, members);
}

LatticeNet grid_net(long k) {
  if (k < 2) throw usage_error("grid needs at least two points per side");
  return LatticeNet(k - 1, [](long, long) { return true; });
}

namespace {

long power3(int e) {
  long p = 1;
  while (e-- > 0) p *= 3;
  return p;
}

}  // namespace

LatticeNet carpet_net(int levels, int exponent) {
  if (levels < 0 || exponent < levels) throw usage_error("carpet needs 0 <= levels <= exponent");
  std::vector<long> cell;
  for (int l = 1; l <= levels; ++l) cell.push_back(power3(exponent - l + 1));
  return LatticeNet(power3(exponent), [cell](long i, long j) {
    for (long c : cell) {
      const long s = c / 3, a = i % c, b = j % c;
      if (a > s && a < 2 * s && b > s && b < 2 * s) return false;
    }
    return true;
  });
}

std::vector<Hole> carpet_holes(int levels, int exponent) {
  std::vector<Hole> out;
  const long N = power3(exponent);
  for (int l = 1; l <= levels; ++l) {
    const long c = power3(exponent - l + 1), s = c / 3;
    for (long by = 0; by < N; by += c)
      for (long bx = 0; bx < N; bx += c) {
        // Skip cells already inside a coarser hole.
        bool inside = false;
        for (int m = 1; m < l && !inside; ++m) {
          const long cm = power3(exponent - m + 1), sm = cm / 3;
          const long a = bx % cm, b = by % cm;
          inside = a >= sm && a < 2 * sm && b >= sm && b < 2 * sm;
        }
        if (!inside) out.push_back({l, bx + s, by + s, bx + 2 * s, by + 2 * s});
      }
  }
  return out;
}

}  // namespace hyparc
