#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace hyparc {

/// Element of Z[z] with z a primitive 16th root of unity (z^8 = -1),
/// stored in the power basis 1, z, ..., z^7. Arithmetic is exact; overflow
/// of a 64-bit coefficient throws Error(budget).
struct Zeta16 {
  std::array<std::int64_t, 8> c{};

  static Zeta16 one() { Zeta16 r; r.c[0] = 1; return r; }
  /// z^k for any integer k.
  static Zeta16 power(int k);
  /// 1 + sqrt(2).
  static Zeta16 one_plus_sqrt2();

  Zeta16 operator+(const Zeta16& o) const;
  Zeta16 operator-(const Zeta16& o) const;
  Zeta16 operator-() const;
  Zeta16 operator*(const Zeta16& o) const;
  /// Complex conjugation z -> z^-1.
  Zeta16 conj() const;
  bool operator==(const Zeta16&) const = default;

  std::complex<double> value() const;
};

/// Element a + b w of Z[w], w a primitive cube root of unity (w^2 = -1 - w).
struct ZOmega {
  std::int64_t a = 0;
  std::int64_t b = 0;

  ZOmega operator+(const ZOmega& o) const;
  ZOmega operator-(const ZOmega& o) const;
  ZOmega operator*(const ZOmega& o) const;
  bool operator==(const ZOmega&) const = default;
};

}  // namespace hyparc
