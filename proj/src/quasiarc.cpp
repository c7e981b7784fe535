#include "hyparc/quasiarc.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "hyparc/error.hpp"

namespace hyparc {

Arc cut_loops(const Arc& arc) {
  Arc out;
  std::unordered_map<PointId, std::size_t> at;
  for (PointId p : arc) {
    if (auto it = at.find(p); it != at.end()) {
      for (std::size_t k = it->second + 1; k < out.size(); ++k) at.erase(out[k]);
      out.resize(it->second + 1);
      continue;
    }
    at.emplace(p, out.size());
    out.push_back(p);
  }
  return out;
}

bool is_simple(const Arc& arc) {
  std::unordered_set<PointId> seen(arc.begin(), arc.end());
  return seen.size() == arc.size();
}

double arc_diameter(const Net& net, const Arc& arc) {
  if (arc.empty()) return 0.0;
  auto t = net.span_tracker();
  t->reset(arc[0]);
  double d = 0.0;
  for (std::size_t k = 1; k < arc.size(); ++k) d = t->add(arc[k]);
  return d;
}

FollowResult follows_check(const Net& net, const Arc& B, const Arc& A, double iota) {
  if (B.empty() || A.empty()) return {B.empty() && A.empty(), 0};
  const std::size_t m = B.size(), n = A.size();
  if (net.dist(B[0], A[0]) > iota) return {false, 0};
  std::size_t p = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (k + 1 == m) break;
    while (p < n && net.dist(B[k], A[p]) > iota) ++p;
    if (p == n) return {false, k};
  }
  if (net.dist(B[m - 1], A[n - 1]) > iota) return {false, m - 1};
  return {true, 0};
}

double follow_distance(const Net& net, const Arc& B, const Arc& A) {
  if (B.empty() || A.empty()) return 0.0;
  double lo = 0.0, hi = net.diameter();
  if (follows_check(net, B, A, 0.0).follows) return 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (follows_check(net, B, A, mid).follows ? hi : lo) = mid;
  }
  return hi;
}

PathSearch::PathSearch(const Net& net) : net_(net), stamp_(net.id_bound(), 0), parent_(net.id_bound(), 0) {}

Arc PathSearch::find(PointId from, PointId to, const std::function<bool(PointId)>& allowed, std::size_t budget) {
  visited_ = 0;
  if (from == to) return {from};
  if (++gen_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    gen_ = 1;
  }
  std::vector<PointId> queue{from}, nbrs;
  stamp_[from] = gen_;
  for (std::size_t head = 0; head < queue.size() && visited_ < budget; ++head) {
    PointId v = queue[head];
    ++visited_;
    net_.adjacent(v, nbrs);
    for (PointId u : nbrs) {
      if (stamp_[u] == gen_) continue;
      if (u != to && !allowed(u)) continue;
      stamp_[u] = gen_;
      parent_[u] = v;
      if (u == to) {
        Arc path{to};
        for (PointId x = to; x != from;) path.push_back(x = parent_[x]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(u);
    }
  }
  return {};
}

namespace {

struct Worst {
  double value = -1.0;
  std::size_t i = 0, j = 0;

  void offer(double v, std::size_t a, std::size_t b) {
    if (v > value || (v == value && std::tie(a, b) < std::tie(i, j))) {
      value = v;
      i = a;
      j = b;
    }
  }
  void merge(const Worst& o) { offer(o.value, o.i, o.j); }
};

// For every i, scans j > i with the subarc diameter maintained incrementally;
// offer(i, j, rho, diam) reports into the per-thread Worst.
template <class Offer>
Worst scan_pairs(const Net& net, const Arc& arc, bool parallel, Offer&& offer) {
  Worst total;
  const auto m = static_cast<long>(arc.size());
#pragma omp parallel if (parallel)
  {
    Worst local;
    auto t = net.span_tracker();
#pragma omp for schedule(dynamic, 16)
    for (long i = 0; i < m; ++i) {
      t->reset(arc[static_cast<std::size_t>(i)]);
      for (long j = i + 1; j < m; ++j) {
        double d = t->add(arc[static_cast<std::size_t>(j)]);
        offer(local, static_cast<std::size_t>(i), static_cast<std::size_t>(j),
              net.dist(arc[static_cast<std::size_t>(i)], arc[static_cast<std::size_t>(j)]), d);
      }
    }
#pragma omp critical
    total.merge(local);
  }
  return total;
}

LocalStructure local_structure_impl(const Net& net, const Arc& arc, double iota, double s, double S, bool par) {
  bool holds = true;
  Worst w = scan_pairs(net, arc, par, [&](Worst& local, std::size_t i, std::size_t j, double rho, double diam) {
    if (rho >= s * iota) return;
    local.offer(diam / iota, i, j);
  });
  LocalStructure out;
  out.measured_S = std::max(0.0, w.value);
  out.i = w.i;
  out.j = w.j;
  holds = out.measured_S < S;
  out.holds = holds;
  return out;
}

ArcVerification verify_impl(const Net& net, const Arc& arc, double lambda, double window, bool par) {
  Worst w = scan_pairs(net, arc, par, [&](Worst& local, std::size_t i, std::size_t j, double rho, double diam) {
    if (rho > window) return;
    local.offer(rho > 0 ? diam / rho : INFINITY, i, j);
  });
  ArcVerification v;
  v.lambda = arc.size() < 2 ? 1.0 : std::max(0.0, w.value);
  v.i = w.i;
  v.j = w.j;
  v.simple = is_simple(arc);
  v.pass = v.simple && v.lambda <= lambda * (1.0 + 1e-12);
  return v;
}

}  // namespace

LocalStructure local_structure(const Net& net, const Arc& arc, double iota, double s, double S) {
  return local_structure_impl(net, arc, iota, s, S, true);
}

LocalStructure local_structure_serial(const Net& net, const Arc& arc, double iota, double s, double S) {
  return local_structure_impl(net, arc, iota, s, S, false);
}

ArcVerification verify_quasi_arc(const Net& net, const Arc& arc, double lambda, double window) {
  return verify_impl(net, arc, lambda, window, true);
}

ArcVerification verify_quasi_arc_serial(const Net& net, const Arc& arc, double lambda, double window) {
  return verify_impl(net, arc, lambda, window, false);
}

Arc straighten(const Net& net, const Arc& arc, double iota, StraightenReport* report, double s, double S,
               PathSearch* search) {
  StraightenReport rep;
  rep.iota = iota;
  rep.s = s;
  rep.S = S;
  if (arc.size() < 3) {
    if (report) *report = rep;
    return arc;
  }
  std::unique_ptr<PathSearch> own;
  if (!search) {
    own = std::make_unique<PathSearch>(net);
    search = own.get();
  }
  const std::size_t m = arc.size();
  Arc out;
  for (std::size_t i = 0; i + 1 < m;) {
    std::size_t j = i + 1;
    for (std::size_t k = m - 1; k > i + 1; --k)
      if (net.dist(arc[i], arc[k]) <= iota / 4) {
        j = k;
        break;
      }
    if (j == i + 1) {
      out.push_back(arc[i++]);
      continue;
    }
    const PointId a = arc[i];
    Arc path = search->find(a, arc[j], [&](PointId z) { return net.dist(z, a) <= iota / 2; });
    if (path.empty()) {
      out.push_back(arc[i++]);
      continue;
    }
    out.insert(out.end(), path.begin(), path.end() - 1);
    ++rep.shortcuts;
    i = j;
  }
  out.push_back(arc.back());
  out = cut_loops(out);

  // Repair pairs that come close without the subarc between them being small.
  for (int pass = 0; pass < 8; ++pass) {
    auto ls = local_structure(net, out, iota, s, S);
    if (ls.holds) break;
    bool changed = false;
    auto t = net.span_tracker();
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      t->reset(out[i]);
      std::size_t worst = i;
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        double d = t->add(out[j]);
        if (net.dist(out[i], out[j]) < s * iota && d >= S * iota) worst = j;
      }
      if (worst == i) continue;
      const PointId a = out[i];
      const double reach = std::max(2.0 * net.dist(a, out[worst]), net.resolution());
      Arc path = search->find(a, out[worst], [&](PointId z) { return net.dist(z, a) <= reach; });
      if (path.empty()) continue;
      Arc next(out.begin(), out.begin() + static_cast<long>(i));
      next.insert(next.end(), path.begin(), path.end());
      next.insert(next.end(), out.begin() + static_cast<long>(worst) + 1, out.end());
      out = cut_loops(next);
      ++rep.repairs;
      changed = true;
    }
    if (!changed) break;
  }

  auto ls = local_structure(net, out, iota, s, S);
  rep.measured_S = ls.measured_S;
  rep.follow = follow_distance(net, out, arc);
  rep.ok = ls.holds && rep.follow <= iota * (1.0 + 1e-9);
  if (!ls.holds)
    rep.note = "pair (" + std::to_string(ls.i) + ", " + std::to_string(ls.j) + ") breaks the local structure";
  else if (!rep.ok)
    rep.note = "output does not follow the input within iota";
  if (report) *report = rep;
  return out;
}

std::vector<int> scale_filtration(const std::vector<ObstacleSet>& family, double r, double D0) {
  if (!(r > 0 && r < 1)) throw usage_error("scale ratio r must lie in (0, 1)");
  std::vector<int> cls;
  for (const auto& V : family) {
    const double x = V.scale / D0;
    if (x > 1.0 + 1e-12) throw usage_error("obstacle scale exceeds D0");
    int n = 1;
    while (x <= std::pow(r, n) * (1.0 + 1e-12)) ++n;
    cls.push_back(n);
  }
  return cls;
}

bool proof_regime(const QuasiArcParams& p, std::string* why) {
  const double s_prime = p.s / (8 * p.L * p.L * p.L);
  std::string msg;
  if (p.L < 10) msg += "L < 10; ";
  if (p.r > 0.1) msg += "r > 1/10; ";
  if (p.r > 1.0 / (32 * p.L * p.L * p.L)) msg += "r > 1/(32 L^3); ";
  if (p.r > s_prime / (4 + 2 * p.S)) msg += "r > s'/(4 + 2S); ";
  if (why) *why = msg;
  return msg.empty();
}

Arc detour(const Net& net, const Arc& arc, const ObstacleSet& V, double r_prime, const QuasiArcParams& params,
           PathSearch& search, const std::function<bool(PointId)>& blocked, DetourReport* report) {
  DetourReport rep;
  const double L = params.L;
  const double inner = r_prime / (L * L), exit = r_prime / L, outer = 4 * r_prime;
  auto sd = net.set_distance(V.members);
  std::vector<double> dV(arc.size());
  for (std::size_t k = 0; k < arc.size(); ++k) dV[k] = (*sd)(arc[k]);

  Arc out;
  std::size_t last_end = 0, out_at_last_end = 0;
  bool started = false;
  for (std::size_t k = 0; k < arc.size();) {
    if (dV[k] >= inner) {
      if (!started || k > last_end) out.push_back(arc[k]);
      ++k;
      continue;
    }
    std::size_t x = k;
    while (x > last_end && dV[x] < exit) --x;
    std::size_t y = k;
    while (y + 1 < arc.size() && dV[y] < exit) ++y;
    if (dV[x] < exit || dV[y] < exit) {
      rep.ok = false;
      rep.failure = "arc endpoint inside N(V, r'/L) at index " + std::to_string(dV[x] < exit ? x : y);
      break;
    }
    Arc I(arc.begin() + static_cast<long>(x), arc.begin() + static_cast<long>(y) + 1);
    auto dI = net.set_distance(I);
    Arc J = search.find(arc[x], arc[y], [&](PointId z) {
      double d = (*sd)(z);
      return d >= inner && d <= outer && !blocked(z) && (*dI)(z) <= outer;
    });
    if (J.empty()) {
      rep.ok = false;
      rep.failure = "no detour in the annulus between arc indices " + std::to_string(x) + " and " + std::to_string(y);
      break;
    }
    ++rep.crossings;
    // Drop what was already emitted from x on, then splice the detour.
    out.resize(started ? out_at_last_end + (x - last_end) : x);
    out.insert(out.end(), J.begin(), J.end());
    started = true;
    last_end = y;
    out_at_last_end = out.size() - 1;
    k = y + 1;
  }
  if (!rep.ok) {
    if (report) *report = rep;
    return arc;
  }
  out = cut_loops(out);
  rep.follow = follow_distance(net, out, arc);
  if (report) *report = rep;
  return out;
}

namespace {

double set_gap(const Net& net, const ObstacleSet& a, const SetDistance& to_b) {
  double best = INFINITY;
  for (PointId p : a.members) best = std::min(best, to_b(p));
  (void)net;
  return best;
}

std::pair<PointId, PointId> diametral_pair(const Net& net) {
  auto pts = net.points();
  if (pts.empty()) throw usage_error("empty net");
  auto farthest = [&](PointId from) {
    PointId best = from;
    double bd = -1.0;
    for (PointId p : pts)
      if (double d = net.dist(from, p); d > bd) bd = d, best = p;
    return best;
  };
  PointId b = farthest(pts.front());
  PointId a = farthest(b);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

QuasiArcResult build_quasi_arc(const Net& net, const std::vector<ObstacleSet>& family, const QuasiArcParams& params,
                               Arc J0) {
  QuasiArcResult res;
  QuasiArcReport& rep = res.report;
  const double diamZ = net.diameter(), h = net.resolution(), L = params.L, r = params.r;
  double D0 = params.D0;
  if (D0 <= 0) {
    D0 = family.empty() ? diamZ : 0.0;
    for (const auto& V : family) D0 = std::max(D0, V.scale);
  }
  rep.proof_regime = proof_regime(params, &rep.regime_note);
  rep.stage_of = scale_filtration(family, r, D0);
  rep.drift_limit = diamZ / 4;
  rep.diam_floor = 0.5 - h / diamZ;
  rep.window = D0 * r / (4 * L) * r * r;

  PathSearch search(net);
  if (J0.empty()) {
    auto [a, b] = diametral_pair(net);
    J0 = search.find(a, b, [](PointId) { return true; });
    if (J0.empty()) throw contract_error("net is not connected between a diametral pair");
  }
  std::vector<std::unique_ptr<SetDistance>> sd;
  for (const auto& V : family) sd.push_back(net.set_distance(V.members));
  std::vector<double> block_radius(family.size(), 0.0);
  std::vector<std::size_t> processed;

  Arc arc = std::move(J0);
  rep.persistence_worst = INFINITY;
  for (int n = 1; n <= params.max_stages; ++n) {
    StageLog log;
    log.n = n;
    log.r_prime = D0 * std::pow(r, n) / (16 * L * L);
    log.iota = log.r_prime / (2 * L * L);
    log.follow_bound = D0 * std::pow(r, n) / (4 * L);
    if (log.r_prime < h) {
      log.note = "stage scale below net resolution; stopped";
      rep.stage0_terminated = n == 1;
      rep.stages.push_back(log);
      break;
    }
    std::vector<std::size_t> Vn;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (rep.stage_of[i] == n) Vn.push_back(i);
    log.obstacles = Vn.size();

    const double rad = D0 * std::pow(r, n) / (4 * L);
    for (std::size_t a = 0; a < Vn.size() && log.disjoint; ++a)
      for (std::size_t b = a + 1; b < Vn.size() && log.disjoint; ++b)
        if (set_gap(net, family[Vn[a]], *sd[Vn[b]]) <= 2 * rad) {
          log.disjoint = false;
          rep.failure = "stage " + std::to_string(n) + ": neighbourhoods of obstacles " + std::to_string(Vn[a]) +
                        " and " + std::to_string(Vn[b]) + " overlap";
        }
    if (!log.disjoint) {
      rep.stages.push_back(log);
      break;
    }

    const Arc prev = arc;
    const double rp = log.r_prime;
    for (std::size_t v : Vn) {
      const auto& dist_v = *sd[v];
      // Earlier obstacles near this one keep their clearance.
      std::vector<std::size_t> near;
      for (std::size_t u : processed)
        if (set_gap(net, family[v], *sd[u]) <= 4 * rp + block_radius[u]) near.push_back(u);
      auto blocked = [&](PointId z) {
        for (std::size_t u : near)
          if ((*sd[u])(z) < block_radius[u]) return true;
        return false;
      };

      for (int end = 0; end < 2; ++end) {
        PointId e = end == 0 ? arc.front() : arc.back();
        if (dist_v(e) >= 2 * rp / L) continue;
        std::vector<PointId> cand;
        net.ball(e, 2 * rp + 2 * rp / L, cand);
        Arc best;
        for (PointId q : cand) {
          double d = dist_v(q);
          if (d < 2 * rp / L || d > 2 * rp || blocked(q)) continue;
          best = search.find(q, e, [&](PointId z) { return dist_v(z) <= 3 * rp * L && !blocked(z); });
          if (!best.empty()) break;
        }
        if (best.empty()) {
          rep.failure = "stage " + std::to_string(n) + ": no porosity point to push an endpoint out of obstacle " +
                        std::to_string(v);
          break;
        }
        Arc next;
        if (end == 0) {
          next = best;
          next.insert(next.end(), arc.begin() + 1, arc.end());
        } else {
          next.assign(arc.begin(), arc.end() - 1);
          next.insert(next.end(), best.rbegin(), best.rend());
        }
        arc = cut_loops(next);
        ++log.pushed;
      }
      if (!rep.failure.empty()) break;

      DetourReport dr;
      arc = detour(net, arc, family[v], rp, params, search, blocked, &dr);
      log.crossings += dr.crossings;
      if (!dr.ok) {
        rep.failure = "stage " + std::to_string(n) + ", obstacle " + std::to_string(v) + ": " + dr.failure;
        break;
      }
    }
    if (!rep.failure.empty()) {
      rep.stages.push_back(log);
      break;
    }

    StraightenReport sr;
    arc = straighten(net, arc, log.iota, &sr, params.s, params.S, &search);
    log.measured_S = sr.measured_S;
    if (!sr.ok) log.note = "straightening: " + sr.note;
    log.follow_prev = follow_distance(net, arc, prev);
    log.points = arc.size();
    rep.drift_total += log.follow_prev;
    for (std::size_t v : Vn) {
      processed.push_back(v);
      block_radius[v] = log.iota;
    }
    for (std::size_t u : processed) {
      double c = INFINITY;
      for (PointId p : arc) c = std::min(c, (*sd[u])(p));
      const double need = D0 * std::pow(r, rep.stage_of[u]) / (64 * L * L * L * L);
      rep.persistence_worst = std::min(rep.persistence_worst, c / need);
    }
    rep.stages.push_back(log);
  }

  res.arc = arc;
  rep.clearance.assign(family.size(), INFINITY);
  for (std::size_t v = 0; v < family.size(); ++v)
    for (PointId p : arc) rep.clearance[v] = std::min(rep.clearance[v], (*sd[v])(p));
  for (std::size_t v = 0; v < family.size(); ++v)
    rep.lambda_clearance = std::max(rep.lambda_clearance, family[v].scale / rep.clearance[v]);
  auto global = verify_quasi_arc(net, arc, INFINITY);
  rep.lambda_arc = global.lambda;
  rep.lambda_local = verify_quasi_arc(net, arc, INFINITY, rep.window).lambda;
  rep.lambda_hat = std::max(rep.lambda_arc, rep.lambda_clearance);
  rep.diam_ratio = arc_diameter(net, arc) / diamZ;
  bool clear = std::isfinite(rep.lambda_clearance);
  rep.pass = rep.failure.empty() && global.simple && std::isfinite(rep.lambda_hat) && clear &&
             rep.diam_ratio >= rep.diam_floor && rep.drift_total <= rep.drift_limit;
  if (!std::isfinite(rep.persistence_worst)) rep.persistence_worst = 0.0;
  return res;
}

}  // namespace hyparc
