#include "hyparc/cyclotomic.hpp"

#include <cmath>
#include <numbers>

#include "hyparc/error.hpp"

namespace hyparc {
namespace {

std::int64_t narrow(__int128 v) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw budget_error("cyclotomic coefficient overflow (word too long for exact arithmetic)");
  return static_cast<std::int64_t>(v);
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  return narrow(static_cast<__int128>(a) + b);
}

}  // namespace

Zeta16 Zeta16::power(int k) {
  k %= 16;
  if (k < 0) k += 16;
  Zeta16 r;
  if (k < 8)
    r.c[static_cast<std::size_t>(k)] = 1;
  else
    r.c[static_cast<std::size_t>(k - 8)] = -1;
  return r;
}

Zeta16 Zeta16::one_plus_sqrt2() {
  // sqrt(2) = z^2 + z^-2 = z^2 - z^6.
  Zeta16 r;
  r.c[0] = 1;
  r.c[2] = 1;
  r.c[6] = -1;
  return r;
}

Zeta16 Zeta16::operator+(const Zeta16& o) const {
  Zeta16 r;
  for (std::size_t i = 0; i < 8; ++i) r.c[i] = add_checked(c[i], o.c[i]);
  return r;
}

Zeta16 Zeta16::operator-(const Zeta16& o) const {
  Zeta16 r;
  for (std::size_t i = 0; i < 8; ++i) r.c[i] = narrow(static_cast<__int128>(c[i]) - o.c[i]);
  return r;
}

Zeta16 Zeta16::operator-() const {
  Zeta16 r;
  for (std::size_t i = 0; i < 8; ++i) r.c[i] = -c[i];
  return r;
}

Zeta16 Zeta16::operator*(const Zeta16& o) const {
  std::array<__int128, 8> acc{};
  for (std::size_t i = 0; i < 8; ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < 8; ++j) {
      __int128 p = static_cast<__int128>(c[i]) * o.c[j];
      std::size_t k = i + j;
      if (k < 8)
        acc[k] += p;
      else
        acc[k - 8] -= p;
    }
  }
  Zeta16 r;
  for (std::size_t i = 0; i < 8; ++i) r.c[i] = narrow(acc[i]);
  return r;
}

Zeta16 Zeta16::conj() const {
  // z^k -> z^-k = -z^(8-k) for k = 1..7.
  Zeta16 r;
  r.c[0] = c[0];
  for (std::size_t k = 1; k < 8; ++k) r.c[8 - k] = -c[k];
  return r;
}

std::complex<double> Zeta16::value() const {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < 8; ++k)
    s += static_cast<double>(c[k]) * std::polar(1.0, std::numbers::pi * static_cast<double>(k) / 8.0);
  return s;
}

ZOmega ZOmega::operator+(const ZOmega& o) const { return {add_checked(a, o.a), add_checked(b, o.b)}; }
ZOmega ZOmega::operator-(const ZOmega& o) const {
  return {narrow(static_cast<__int128>(a) - o.a), narrow(static_cast<__int128>(b) - o.b)};
}
ZOmega ZOmega::operator*(const ZOmega& o) const {
  // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w.
  __int128 ac = static_cast<__int128>(a) * o.a, bd = static_cast<__int128>(b) * o.b;
  __int128 mid = static_cast<__int128>(a) * o.b + static_cast<__int128>(b) * o.a;
  return {narrow(ac - bd), narrow(mid - bd)};
}

}  // namespace hyparc
