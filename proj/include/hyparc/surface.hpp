#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "hyparc/cyclotomic.hpp"
#include "hyparc/presentation.hpp"

namespace hyparc {

/// Element of SU(1,1) acting on the Poincare disk, written
///   [[alpha, s*beta], [s*conj(beta), conj(alpha)]]
/// where s is the sinh of half the side-pairing translation length of the
/// regular octagon with interior angles pi/4, so s^2 = 2 + 2 sqrt(2) lies in
/// Z[z]. All entries are exact.
struct DiskIsometry {
  Zeta16 alpha = Zeta16::one();
  Zeta16 beta{};

  DiskIsometry operator*(const DiskIsometry& o) const;
  DiskIsometry inverse() const { return {alpha.conj(), -beta}; }
  bool operator==(const DiskIsometry&) const = default;

  /// Hyperbolic distance from the origin to its image.
  double displacement() const;
  /// Image of the origin in the disk (floating point).
  std::complex<double> origin_image() const;
  Element encode() const;
  static DiskIsometry decode(const Element& e);
};

/// Exact faithful representation of the genus-2 surface group
/// <a,b,c,d | [a,b][c,d]> as the side-pairing group of the regular octagon
/// with angles pi/4. Word-level validated against the presentation.
class SurfaceGroup {
 public:
  /// Returns a representation if p's single relator is, after a signed
  /// renaming of generators, a rotation of [a,b][c,d] or its inverse.
  static std::optional<SurfaceGroup> detect(const Presentation& p);

  const DiskIsometry& generator(Letter l) const;
  DiskIsometry evaluate(const GroupWord& w) const;

  /// Shortlex-least geodesic word for the element u, searched in the
  /// corridor { v : d(o,vo) + d(vo,uo) <= d(o,uo) + slack }.
  GroupWord corridor_geodesic(const GroupWord& u, double slack) const;

  /// Greedy walks of the given length toward count equally spaced
  /// directions at infinity; each is a quasi-geodesic word from the identity.
  std::vector<GroupWord> sample_rays(int count, int length) const;

  int rank() const { return 4; }

 private:
  SurfaceGroup() = default;
  // Indexed by letter_rank.
  std::array<DiskIsometry, 8> gens_{};
  std::array<std::complex<double>, 8> positions_{};
};

/// The surface representation behind p's Dehn backend, if it has one.
const SurfaceGroup* surface_group(const Presentation& p);

}  // namespace hyparc
