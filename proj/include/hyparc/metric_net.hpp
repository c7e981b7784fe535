#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace hyparc {

using PointId = std::size_t;

/// Distance from a fixed finite subset of a net.
class SetDistance {
 public:
  virtual ~SetDistance() = default;
  virtual double operator()(PointId z) const = 0;
};

/// Incremental diameter of a growing point sequence.
class SpanTracker {
 public:
  virtual ~SpanTracker() = default;
  virtual void reset(PointId first) = 0;
  /// Appends z and returns the diameter of everything added so far.
  virtual double add(PointId z) = 0;
};

/// Finite metric space sampled at a working resolution h. Point ids lie in
/// [0, id_bound()) and may be sparse (see contains).
class Net {
 public:
  virtual ~Net() = default;

  virtual std::size_t id_bound() const = 0;
  virtual bool contains(PointId) const { return true; }
  virtual std::size_t count() const { return id_bound(); }
  virtual double dist(PointId a, PointId b) const = 0;
  /// Working resolution h; arcs and chains use steps of at most h.
  virtual double resolution() const = 0;
  virtual double diameter() const = 0;
  /// Points within closed distance r of a, ascending.
  virtual void ball(PointId a, double r, std::vector<PointId>& out) const = 0;
  /// Adjacency used for path searches; every step is at most h.
  virtual void adjacent(PointId a, std::vector<PointId>& out) const;
  virtual std::unique_ptr<SetDistance> set_distance(const std::vector<PointId>& members) const;

  virtual std::unique_ptr<SpanTracker> span_tracker() const;

  std::vector<PointId> points() const;
};

/// Explicit points with a stored distance matrix.
class DenseNet : public Net {
 public:
  DenseNet() = default;
  /// h = factor * (largest nearest-neighbour distance).
  DenseNet(std::size_t n, std::vector<double> d, double factor = 2.0);

  std::size_t id_bound() const override { return n_; }
  std::size_t size() const { return n_; }
  double dist(PointId a, PointId b) const override { return d_[a * n_ + b]; }
  double resolution() const override { return h_; }
  double diameter() const override { return diam_; }
  void ball(PointId a, double r, std::vector<PointId>& out) const override;

  void set_resolution(double h) { h_ = h; }
  double max_nearest_neighbor() const { return nn_; }
  const std::vector<double>& matrix() const { return d_; }

 protected:
  std::size_t n_ = 0;
  std::vector<double> d_;
  double h_ = 0.0;
  double nn_ = 0.0;
  double diam_ = 0.0;
};

/// k equally spaced points on the unit circle with the chord metric.
DenseNet circle_net(std::size_t k);

/// Lattice points (i, j) / N of the unit square under the sup metric, kept
/// when the membership predicate accepts them. Adjacency is the eight
/// king moves and h is twice the spacing.
class LatticeNet : public Net {
 public:
  LatticeNet(long N, std::function<bool(long, long)> member);

  long side() const { return N_; }
  double spacing() const { return 1.0 / static_cast<double>(N_); }
  PointId id(long i, long j) const { return static_cast<PointId>(j * (N_ + 1) + i); }
  long x(PointId p) const { return static_cast<long>(p % static_cast<PointId>(N_ + 1)); }
  long y(PointId p) const { return static_cast<long>(p / static_cast<PointId>(N_ + 1)); }
  bool member(long i, long j) const { return i >= 0 && j >= 0 && i <= N_ && j <= N_ && inside(i, j); }

  std::size_t id_bound() const override { return static_cast<std::size_t>((N_ + 1) * (N_ + 1)); }
  bool contains(PointId p) const override { return p < id_bound() && inside(x(p), y(p)); }
  std::size_t count() const override;
  double dist(PointId a, PointId b) const override;
  double resolution() const override { return 2.0 * spacing(); }
  double diameter() const override { return 1.0; }
  void ball(PointId a, double r, std::vector<PointId>& out) const override;
  void adjacent(PointId a, std::vector<PointId>& out) const override;
  std::unique_ptr<SetDistance> set_distance(const std::vector<PointId>& members) const override;
  std::unique_ptr<SpanTracker> span_tracker() const override;

 private:
  bool inside(long i, long j) const { return mask_[static_cast<std::size_t>(id(i, j))] != 0; }

  long N_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

/// k x k grid of the unit square.
LatticeNet grid_net(long k);

/// Sierpinski carpet with holes of levels 1..levels removed, sampled with
/// spacing 3^-exponent (exponent >= levels).
LatticeNet carpet_net(int levels, int exponent);

/// Axis-aligned holes of a carpet: [x0, x1] x [y0, y1] in lattice units.
struct Hole {
  int level;
  long x0, y0, x1, y1;
};
std::vector<Hole> carpet_holes(int levels, int exponent);

}  // namespace hyparc
