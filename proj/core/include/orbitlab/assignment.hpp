#pragma once

#include <Eigen/Core>
#include <vector>

namespace orbitlab {

/// Exact minimum-cost perfect matching on a square cost matrix via shortest
/// augmenting paths with dual potentials (O(n^3)). Returns the assignment as
/// row -> column.
std::vector<int> solve_assignment_min(const Eigen::MatrixXd& cost);

double assignment_min_cost(const Eigen::MatrixXd& cost);
double assignment_max_value(const Eigen::MatrixXd& value);

}  // namespace orbitlab
