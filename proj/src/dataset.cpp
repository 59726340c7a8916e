#include "listdec/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace listdec {

Dataset::Dataset(RowMatrixXd points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1)
        throw std::invalid_argument("dataset must have at least one point and one dimension");
    if (!points_.allFinite())
        throw std::invalid_argument("dataset contains non-finite coordinates");
}

WorkItem make_work_item(std::vector<int64_t> subset, double alpha_prime, int64_t n) {
    if (!(alpha_prime > 0.0 && alpha_prime <= 1.0))
        throw std::invalid_argument("work item alpha' must be in (0, 1]");
    int64_t prev = -1;
    for (int64_t idx : subset) {
        if (idx <= prev || idx >= n)
            throw std::invalid_argument("work item subset must be sorted, unique, in range");
        prev = idx;
    }
    return WorkItem{std::move(subset), alpha_prime};
}

} // namespace listdec
