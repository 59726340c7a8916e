#include "listdec/cluster.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace listdec {

namespace {

// Early-exit l_inf proximity check.
bool within_linf(Eigen::Ref<const Eigen::RowVectorXd> a, Eigen::Ref<const Eigen::RowVectorXd> b,
                 double radius) {
    const Eigen::Index d = a.size();
    for (Eigen::Index j = 0; j < d; ++j)
        if (std::abs(a[j] - b[j]) > radius) return false;
    return true;
}

} // namespace

ClusterOutput cluster(const Dataset& data, const EstimationParams& params,
                      const ClusterOptions& options) {
    const int64_t n = data.n();
    const double root_gamma = std::sqrt(params.gamma());
    const double r_near = 2.0 * params.big_c() * root_gamma;
    const double r_far = 6.0 * params.big_c() * root_gamma;
    const int64_t need = static_cast<int64_t>(std::ceil(params.alpha() * static_cast<double>(n)));

    ClusterOutput out;
    for (int64_t i = 0; i < n; ++i) {
        auto xi = data.point(i);
        bool near_center = false;
        for (int64_t c : out.centers) {
            if (within_linf(xi, data.point(c), r_far)) {
                near_center = true;
                break;
            }
        }
        if (near_center) continue;
        int64_t count = 0;
        for (int64_t j = 0; j < n && count < need; ++j)
            if (within_linf(xi, data.point(j), r_near)) ++count;
        if (count >= need) out.centers.push_back(i);
    }

    std::vector<bool> taken(options.allow_overlap ? 0 : static_cast<size_t>(n), false);
    for (int64_t c : out.centers) {
        auto xc = data.point(c);
        std::vector<int64_t> members;
        for (int64_t j = 0; j < n; ++j) {
            if (!options.allow_overlap && taken[static_cast<size_t>(j)]) continue;
            if (within_linf(xc, data.point(j), r_far)) {
                members.push_back(j);
                if (!options.allow_overlap) taken[static_cast<size_t>(j)] = true;
            }
        }
        out.subsets.push_back(make_work_item(std::move(members), params.alpha() / 2.0, n));
    }
    return out;
}

double linf_diameter(const WorkItem& subset, const Dataset& data) {
    if (subset.subset.empty())
        throw std::invalid_argument("linf_diameter: subset must be nonempty");
    const Eigen::Index d = data.d();
    double diam = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int64_t idx : subset.subset) {
            double v = data.point(idx)[j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        diam = std::max(diam, hi - lo);
    }
    return diam;
}

} // namespace listdec
