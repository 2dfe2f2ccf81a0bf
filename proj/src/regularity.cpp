#include "troplanar/regularity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>

#include "troplanar/lp.hpp"

namespace troplanar {

namespace {

std::atomic<std::size_t> g_calls{0};
std::atomic<std::size_t> g_exact{0};

struct Fold {
  int a, b, c, d;
  std::int64_t alpha, beta;  // h_c + h_d - alpha h_a - beta h_b > 0
};

std::vector<Fold> folds_of(const Triangulation& t) {
  const auto& cfg = t.config();
  const auto& pts = cfg.points();
  std::vector<Fold> out;
  for (int id : t.edge_ids()) {
    if (cfg.is_boundary_edge(id)) continue;
    auto [a, b] = cfg.edge(id);
    int c = t.apex(id, 0), d = t.apex(id, 1);
    if (c < 0 || d < 0) throw std::logic_error("interior edge without two triangles");
    LatticePoint u = pts[b] - pts[a];
    LatticePoint s = (pts[c] - pts[a]) + (pts[d] - pts[a]);
    std::int64_t beta = u.x != 0 ? s.x / u.x : s.y / u.y;
    out.push_back({a, b, c, d, 2 - beta, beta});
  }
  return out;
}

mpq_class approximate(double v, long max_den) {
  // Continued-fraction convergents of |v|.
  bool neg = v < 0;
  double x = std::fabs(v);
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    mpz_class ai = static_cast<long>(a);
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = x - a;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return 0;
  mpq_class r(p1, q1);
  r.canonicalize();
  return neg ? mpq_class(-r) : r;
}

bool verify_witness(const std::vector<Fold>& folds, const std::vector<std::int64_t>& h) {
  for (const auto& f : folds) {
    __int128 v = static_cast<__int128>(h[f.c]) + h[f.d] - static_cast<__int128>(f.alpha) * h[f.a] -
                 static_cast<__int128>(f.beta) * h[f.b];
    if (v <= 0) return false;
  }
  return true;
}

bool verify_farkas(const std::vector<Fold>& folds, int n, const std::vector<double>& y) {
  double top = 0;
  for (double v : y) top = std::max(top, v);
  if (top <= 1e-9) return false;
  std::vector<mpq_class> coef(n, 0);
  bool any = false;
  for (std::size_t e = 0; e < folds.size(); ++e) {
    mpq_class ye = approximate(y[e] / top, 1000000);
    if (sgn(ye) < 0) return false;
    if (sgn(ye) == 0) continue;
    any = true;
    const auto& f = folds[e];
    coef[f.c] += ye;
    coef[f.d] += ye;
    coef[f.a] -= ye * f.alpha;
    coef[f.b] -= ye * f.beta;
  }
  if (!any) return false;
  return std::all_of(coef.begin(), coef.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

HeightFunction make_heights(const PointConfiguration& cfg, std::vector<mpq_class> h) {
  HeightFunction out;
  out.points = cfg.points();
  out.heights = std::move(h);
  return out;
}

}  // namespace

const mpq_class& HeightFunction::at(LatticePoint p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) throw std::out_of_range("height not defined at point");
  return heights[it - points.begin()];
}

std::vector<LatticePolygon> induce_subdivision(const LatticePolygon& p, const HeightFunction& h) {
  auto pts = p.lattice_points();
  const int n = static_cast<int>(pts.size());
  std::vector<mpq_class> hv;
  for (const auto& q : pts) hv.push_back(h.at(q));
  std::map<std::vector<LatticePoint>, LatticePolygon> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::int64_t d = orient(pts[i], pts[j], pts[k]);
        if (d == 0) continue;
        bool lower = true;
        std::vector<LatticePoint> on_plane;
        for (int q = 0; q < n && lower; ++q) {
          // Height of the plane through the lifted triple at q, times d.
          mpq_class plane = orient(pts[q], pts[j], pts[k]) * hv[i] + orient(pts[i], pts[q], pts[k]) * hv[j] +
                            orient(pts[i], pts[j], pts[q]) * hv[k];
          int s = sgn(hv[q] * d - plane) * (d > 0 ? 1 : -1);
          if (s < 0) lower = false;
          if (s == 0) on_plane.push_back(pts[q]);
        }
        if (!lower) continue;
        LatticePolygon cell = LatticePolygon::hull(on_plane);
        cells.emplace(cell.vertices(), cell);
      }
  std::vector<LatticePolygon> out;
  for (auto& [k, c] : cells) out.push_back(c);
  return out;
}

std::vector<LatticePolygon> cells_of(const Triangulation& t) {
  std::vector<LatticePolygon> out;
  for (const auto& tri : t.lattice_triangles()) out.push_back(LatticePolygon::hull(tri));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.vertices() < b.vertices(); });
  return out;
}

RegularityResult is_regular(const Triangulation& t) {
  ++g_calls;
  const auto& cfg = t.config();
  const int n = cfg.point_count();
  auto folds = folds_of(t);
  RegularityResult res;
  if (folds.empty()) {
    res.regular = true;
    res.witness = make_heights(cfg, std::vector<mpq_class>(n, 0));
    return res;
  }
  lp::Problem prob;
  prob.vars = n + 1;
  const int eps = n;
  for (const auto& f : folds) {
    prob.rows.push_back({{eps, 1}, {f.c, -1}, {f.d, -1}, {f.a, f.alpha}, {f.b, f.beta}});
    prob.rhs.push_back(0);
  }
  for (int i = 0; i <= n; ++i) {
    prob.rows.push_back({{i, 1}});
    prob.rhs.push_back(1);
  }
  prob.objective.assign(n + 1, 0);
  prob.objective[eps] = 1;

  auto fast = lp::solve_double(prob, eps, 1e-7);
  bool positive = fast.status == lp::Status::Stopped ||
                  (fast.status == lp::Status::Optimal && fast.value > 1e-7);
  if (positive) {
    for (double scale : {1e3, 1e6, 1e9}) {
      std::vector<std::int64_t> h(n);
      for (int i = 0; i < n; ++i) h[i] = std::llround(fast.x[i] * scale);
      if (verify_witness(folds, h)) {
        std::vector<mpq_class> hq;
        for (auto v : h) hq.emplace_back(static_cast<long>(v));
        res.regular = true;
        res.witness = make_heights(cfg, std::move(hq));
        return res;
      }
    }
  } else if (fast.status == lp::Status::Optimal) {
    std::vector<double> y(fast.duals.begin(), fast.duals.begin() + folds.size());
    if (verify_farkas(folds, n, y)) return res;
  }

  ++g_exact;
  res.used_exact_solver = true;
  auto exact = lp::solve_exact(prob, eps);
  bool ok = exact.status == lp::Status::Stopped || sgn(exact.value) > 0;
  if (ok) {
    std::vector<mpq_class> hq(exact.x.begin(), exact.x.begin() + n);
    res.regular = true;
    res.witness = make_heights(cfg, std::move(hq));
  }
  return res;
}

RegularityCounters regularity_counters() { return {g_calls.load(), g_exact.load()}; }

std::vector<Triangulation> enumerate_unimodular_triangulations(const LatticePolygon& p, bool regular_only) {
  auto cfg = make_configuration(p);
  std::vector<Triangulation> out;
  for_each_triangulation_orbit(cfg, SymmetryGroup::Trivial, [&](const Triangulation& t, const OrbitInfo&) {
    if (!regular_only || is_regular(t).regular) out.push_back(t);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.bits() < b.bits(); });
  return out;
}

}  // namespace troplanar
