#include "hyparc/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "hyparc/error.hpp"

namespace hyparc {
namespace {

// s^2 = 2 + 2 sqrt(2) = 2 + 2 (z^2 - z^6).
Zeta16 sinh_sq() {
  Zeta16 r;
  r.c[0] = 2;
  r.c[2] = 2;
  r.c[6] = -2;
  return r;
}

const double kSinh = std::sqrt(2.0 + 2.0 * std::numbers::sqrt2);

// Side pairing of the octagon with side midpoints at angles k*pi/4 that maps
// side i onto side j: translation across side j after a rotation by
// theta_j - theta_i + pi.
DiskIsometry side_pairing(int i, int j) {
  DiskIsometry m;
  int rot = j - i + 4;
  m.alpha = Zeta16::one_plus_sqrt2() * Zeta16::power(rot);
  m.beta = Zeta16::power(2 * j - rot);
  return m;
}

// Standard generators a, b, c, d for the relator a b A B c d C D.
DiskIsometry standard_generator(int index) {
  switch (index) {
    case 0: return side_pairing(2, 0);
    case 1: return side_pairing(1, 3);
    case 2: return side_pairing(6, 4);
    default: return side_pairing(5, 7);
  }
}

bool is_rotation(const std::vector<Letter>& w, const std::vector<Letter>& r) {
  if (w.size() != r.size()) return false;
  for (std::size_t s = 0; s < r.size(); ++s) {
    bool ok = true;
    for (std::size_t k = 0; k < r.size() && ok; ++k) ok = w[k] == r[(s + k) % r.size()];
    if (ok) return true;
  }
  return false;
}

}  // namespace

DiskIsometry DiskIsometry::operator*(const DiskIsometry& o) const {
  static const Zeta16 s2 = sinh_sq();
  DiskIsometry r;
  r.alpha = alpha * o.alpha + s2 * (beta * o.beta.conj());
  r.beta = alpha * o.beta + beta * o.alpha.conj();
  return r;
}

double DiskIsometry::displacement() const {
  double a = std::abs(alpha.value());
  if (a <= 1.0) return 0.0;
  // cosh d = 2|alpha|^2 - 1, i.e. d = 2 arccosh |alpha|.
  return 2.0 * std::log(a + std::sqrt((a - 1.0) * (a + 1.0)));
}

std::complex<double> DiskIsometry::origin_image() const {
  return kSinh * beta.value() / std::conj(alpha.value());
}

Element DiskIsometry::encode() const {
  Element e(16);
  for (std::size_t i = 0; i < 8; ++i) {
    e[i] = alpha.c[i];
    e[8 + i] = beta.c[i];
  }
  return e;
}

DiskIsometry DiskIsometry::decode(const Element& e) {
  DiskIsometry m;
  for (std::size_t i = 0; i < 8; ++i) {
    m.alpha.c[i] = e[i];
    m.beta.c[i] = e[8 + i];
  }
  return m;
}

std::optional<SurfaceGroup> SurfaceGroup::detect(const Presentation& p) {
  if (p.rank() != 4 || p.relators.size() != 1 || p.relators[0].size() != 8) return std::nullopt;
  const std::vector<Letter> standard{1, 2, -1, -2, 3, 4, -3, -4};
  const std::vector<Letter> standard_inv = inverse(GroupWord{standard}).letters;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    for (int signs = 0; signs < 16; ++signs) {
      auto image = [&](Letter l) {
        int g = generator_of(l);
        int sign = (signs >> g) & 1 ? -1 : 1;
        auto target = static_cast<Letter>(sign * (perm[static_cast<std::size_t>(g)] + 1));
        return l > 0 ? target : inverse(target);
      };
      std::vector<Letter> mapped;
      for (Letter l : p.relators[0].letters) mapped.push_back(image(l));
      if (!is_rotation(mapped, standard) && !is_rotation(mapped, standard_inv)) continue;

      SurfaceGroup sg;
      for (int g = 0; g < 4; ++g) {
        Letter t = image(static_cast<Letter>(g + 1));
        DiskIsometry m = standard_generator(generator_of(t));
        if (t < 0) m = m.inverse();
        sg.gens_[static_cast<std::size_t>(letter_rank(static_cast<Letter>(g + 1)))] = m;
        sg.gens_[static_cast<std::size_t>(letter_rank(static_cast<Letter>(-(g + 1))))] = m.inverse();
      }
      for (std::size_t r = 0; r < 8; ++r) sg.positions_[r] = sg.gens_[r].origin_image();
      if (!(sg.evaluate(p.relators[0]) == DiskIsometry{})) continue;
      return sg;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

const DiskIsometry& SurfaceGroup::generator(Letter l) const {
  return gens_[static_cast<std::size_t>(letter_rank(l))];
}

DiskIsometry SurfaceGroup::evaluate(const GroupWord& w) const {
  DiskIsometry m;
  for (Letter l : w.letters) m = m * generator(l);
  return m;
}

GroupWord SurfaceGroup::corridor_geodesic(const GroupWord& u, double slack) const {
  const DiskIsometry target = evaluate(u);
  const Element target_key = target.encode();
  const double total = target.displacement();
  if (target == DiskIsometry{}) return {};

  struct Node {
    DiskIsometry v;
    DiskIsometry to_target;  // v^-1 u
    std::int64_t parent;
    Letter via;
  };
  std::vector<Node> nodes;
  std::unordered_map<Element, std::int64_t, ElementHash> index;
  nodes.push_back({DiskIsometry{}, target, -1, 0});
  index.emplace(DiskIsometry{}.encode(), 0);
  constexpr std::size_t kBudget = 4'000'000;

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (int r = 0; r < 8; ++r) {
      Letter l = letter_from_rank(r);
      const DiskIsometry& s = gens_[static_cast<std::size_t>(r)];
      DiskIsometry v = nodes[head].v * s;
      Element key = v.encode();
      if (index.count(key)) continue;
      DiskIsometry rest = s.inverse() * nodes[head].to_target;
      if (v.displacement() + rest.displacement() > total + slack + 1e-9) continue;
      index.emplace(key, static_cast<std::int64_t>(nodes.size()));
      nodes.push_back({v, rest, static_cast<std::int64_t>(head), l});
      if (key == target_key) {
        GroupWord out;
        for (auto at = static_cast<std::int64_t>(nodes.size()) - 1; nodes[static_cast<std::size_t>(at)].parent >= 0;
             at = nodes[static_cast<std::size_t>(at)].parent)
          out.letters.push_back(nodes[static_cast<std::size_t>(at)].via);
        std::reverse(out.letters.begin(), out.letters.end());
        return out;
      }
      if (nodes.size() > kBudget) throw budget_error("corridor search exceeded vertex budget");
    }
  }
  throw contract_error("corridor search did not reach the target; increase slack");
}

std::vector<GroupWord> SurfaceGroup::sample_rays(int count, int length) const {
  std::vector<GroupWord> rays;
  rays.reserve(static_cast<std::size_t>(count));
  // Boundary action of each generator's inverse, in floating point.
  auto act = [](const DiskIsometry& m, std::complex<double> z) {
    std::complex<double> a = m.alpha.value(), b = kSinh * m.beta.value();
    return (a * z + b) / (std::conj(b) * z + std::conj(a));
  };
  for (int j = 0; j < count; ++j) {
    double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / count;
    std::complex<double> xi = std::polar(1.0, theta);
    GroupWord w;
    for (int step = 0; step < length; ++step) {
      int best = 0;
      double best_score = -1e300;
      for (int r = 0; r < 8; ++r) {
        double score = std::real(std::conj(xi) * positions_[static_cast<std::size_t>(r)]);
        if (score > best_score) {
          best_score = score;
          best = r;
        }
      }
      w.letters.push_back(letter_from_rank(best));
      xi = act(gens_[static_cast<std::size_t>(best)].inverse(), xi);
      xi /= std::abs(xi);
    }
    rays.push_back(free_reduce(w));
  }
  return rays;
}

}  // namespace hyparc
