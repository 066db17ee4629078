#include "orbitlab/assignment.hpp"

#include <limits>

#include "orbitlab/errors.hpp"

namespace orbitlab {

// Jonker-Volgenant style augmenting-path solver with dual potentials, O(n^3).
// Exact for real costs: every augmentation follows a shortest path in the
// reduced-cost graph, so the result is a true optimum, not an approximation.
std::vector<int> solve_assignment_min(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) throw SizeMismatch("assignment needs a square cost");
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n, 0.0), v(n + 1, 0.0);
  std::vector<int> match_col(n + 1, -1);  // column -> row, -1 = unmatched

  for (int row = 0; row < n; ++row) {
    int j0 = n;  // virtual column holding the row being inserted
    match_col[n] = row;
    std::vector<double> min_reduced(n + 1, inf);
    std::vector<int> prev(n + 1, n);
    std::vector<char> used(n + 1, 0);

    do {
      used[j0] = 1;
      const int i0 = match_col[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0, j) - u[i0] - v[j];
        if (reduced < min_reduced[j]) {
          min_reduced[j] = reduced;
          prev[j] = j0;
        }
        if (min_reduced[j] < delta) {
          delta = min_reduced[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          if (match_col[j] >= 0) u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_reduced[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != -1);

    while (j0 != n) {
      const int j1 = prev[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    }
    match_col[n] = -1;
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 0; j < n; ++j) {
    if (match_col[j] >= 0) row_to_col[match_col[j]] = j;
  }
  return row_to_col;
}

double assignment_min_cost(const Eigen::MatrixXd& cost) {
  const auto assign = solve_assignment_min(cost);
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(assign.size()); ++i) total += cost(i, assign[i]);
  return total;
}

double assignment_max_value(const Eigen::MatrixXd& value) {
  return -assignment_min_cost(-value);
}

}  // namespace orbitlab
