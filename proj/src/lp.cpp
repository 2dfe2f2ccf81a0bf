#include "troplanar/lp.hpp"

#include <stdexcept>

namespace troplanar::lp {

namespace {

struct DoubleOps {
  static constexpr double eps = 1e-9;
  static bool positive(double v) { return v > eps; }
  static bool negative(double v) { return v < -eps; }
  static bool zero(double v) { return v <= eps && v >= -eps; }
};

struct ExactOps {
  static bool positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool negative(const mpq_class& v) { return sgn(v) < 0; }
  static bool zero(const mpq_class& v) { return sgn(v) == 0; }
};

template <class T, class Ops>
Solution<T> simplex(const Problem& p, int stop_var, const T& stop_above) {
  const int m = static_cast<int>(p.rows.size());
  const int n = p.vars;
  const int cols = n + m;  // structural then slack
  // tab[r][cols] holds the right-hand side; row m is the objective row
  // storing reduced costs as -c so that negative entries can enter.
  std::vector<std::vector<T>> tab(m + 1, std::vector<T>(cols + 1, T(0)));
  for (int r = 0; r < m; ++r) {
    if (p.rhs[r] < 0) throw std::invalid_argument("origin must be feasible");
    for (auto [j, a] : p.rows[r]) tab[r][j] += T(static_cast<long>(a));
    tab[r][n + r] = T(1);
    tab[r][cols] = T(static_cast<long>(p.rhs[r]));
  }
  for (int j = 0; j < n; ++j) tab[m][j] = T(static_cast<long>(-p.objective[j]));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = n + r;

  Solution<T> sol;
  auto extract = [&] {
    sol.x.assign(n, T(0));
    for (int r = 0; r < m; ++r)
      if (basis[r] < n) sol.x[basis[r]] = tab[r][cols];
    sol.value = tab[m][cols];
  };
  auto stop_reached = [&] {
    if (stop_var < 0) return false;
    for (int r = 0; r < m; ++r)
      if (basis[r] == stop_var) return Ops::positive(tab[r][cols] - stop_above);
    return false;
  };

  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (Ops::negative(tab[m][j])) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    T best_ratio{};
    for (int r = 0; r < m; ++r) {
      if (!Ops::positive(tab[r][enter])) continue;
      T ratio = tab[r][cols] / tab[r][enter];
      bool better = leave < 0 || Ops::negative(ratio - best_ratio) ||
                    (Ops::zero(ratio - best_ratio) && basis[r] < basis[leave]);
      if (better) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      sol.status = Status::Unbounded;
      extract();
      return sol;
    }
    T piv = tab[leave][enter];
    for (int j = 0; j <= cols; ++j) tab[leave][j] /= piv;
    tab[leave][enter] = T(1);
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      T f = tab[r][enter];
      if (Ops::zero(f)) {
        tab[r][enter] = T(0);
        continue;
      }
      for (int j = 0; j <= cols; ++j) {
        if (Ops::zero(tab[leave][j])) continue;
        tab[r][j] -= f * tab[leave][j];
      }
      tab[r][enter] = T(0);
    }
    basis[leave] = enter;
    ++sol.pivots;
    if (stop_reached()) {
      sol.status = Status::Stopped;
      extract();
      return sol;
    }
  }
  sol.status = Status::Optimal;
  extract();
  sol.duals.assign(m, T(0));
  for (int r = 0; r < m; ++r) sol.duals[r] = tab[m][n + r];
  return sol;
}

}  // namespace

Solution<double> solve_double(const Problem& p, int stop_var, double stop_above) {
  return simplex<double, DoubleOps>(p, stop_var, stop_above);
}

Solution<mpq_class> solve_exact(const Problem& p, int stop_var) {
  return simplex<mpq_class, ExactOps>(p, stop_var, mpq_class(0));
}

}  // namespace troplanar::lp
