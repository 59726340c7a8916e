#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace listdec {

using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n sample points in dimension d, row-major. Created once, never mutated;
/// everything downstream references rows by index.
class Dataset {
public:
    Dataset(RowMatrixXd points);

    int64_t n() const { return points_.rows(); }
    int64_t d() const { return points_.cols(); }
    const RowMatrixXd& points() const { return points_; }
    auto point(int64_t i) const { return points_.row(i); }

private:
    RowMatrixXd points_;
};

/// One node of the multifilter tree: a subset of dataset indices plus its
/// claimed purity alpha'.
struct WorkItem {
    std::vector<int64_t> subset; // sorted ascending, unique, in range
    double alpha_prime = 0.0;    // in (0, 1]
};

/// Validates index order/range/uniqueness and alpha' <= 1.
WorkItem make_work_item(std::vector<int64_t> subset, double alpha_prime, int64_t n);

} // namespace listdec
