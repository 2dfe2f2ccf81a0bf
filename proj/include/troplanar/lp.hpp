#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace troplanar::lp {

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is a
/// feasible starting vertex. Coefficients are small integers.
struct Problem {
  int vars = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows;  // sparse A
  std::vector<std::int64_t> rhs;
  std::vector<std::int64_t> objective;
};

enum class Status { Optimal, Unbounded, Stopped };

template <class T>
struct Solution {
  Status status = Status::Optimal;
  T value{};
  std::vector<T> x;      // primal point
  std::vector<T> duals;  // one per row, valid when Optimal
  int pivots = 0;
};

// Bland's rule simplex. If stop_var >= 0, stops as soon as the current vertex
// has x[stop_var] > stop_above.
Solution<double> solve_double(const Problem& p, int stop_var = -1, double stop_above = 0.0);
Solution<mpq_class> solve_exact(const Problem& p, int stop_var = -1);

}  // namespace troplanar::lp
