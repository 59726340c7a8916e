#pragma once

#include <Eigen/Dense>

namespace listdec {

/// Keeps the k largest-magnitude entries of v and zeroes the rest.
/// Ties on magnitude keep the lower index.
Eigen::VectorXd hard_threshold(const Eigen::VectorXd& v, int k);

} // namespace listdec
