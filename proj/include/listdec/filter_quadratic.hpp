#pragma once

#include "listdec/filter_basic.hpp"

#include <cstdint>

namespace listdec {

/// Context for one quadratic multifilter call: the normalized harmonic
/// matrix A (unit Frobenius, shift = restricted sample mean), the variance
/// scale beta, and the multilinear sampling budget m.
struct QuadContext {
    HarmonicQuadratic a_matrix;
    double beta = 0.0;     // C log(1/alpha) log^2(2 + log(1/alpha))
    int64_t phi_size = 0;  // ceil(200 / alpha * log(4/tau))

    static QuadContext compute(HarmonicQuadratic a, double alpha, double tau_call,
                               const EstimationParams& params);
};

/// Eigendecomposes the restricted PSD block and runs the basic filter on
/// each eigenvector's linear form (descending eigenvalue, above
/// 1e-12 * max|lambda|). First non-YES outcome wins.
BasicOutcome degree2_homogeneous(const Eigen::MatrixXd& b_block, const std::vector<int>& support,
                                 const Eigen::VectorXd& shift, const WorkItem& item,
                                 const Dataset& data, const EstimationParams& params);

/// Verifies q(x) = ||V(x - shift)||^2 via degree2_homogeneous on V'V, then
/// probes unit directions V(x - shift)/sqrt(q(x)) for phi_size points drawn
/// with replacement from the subset under sub_seed.
BasicOutcome multilinear_multifilter(const Eigen::MatrixXd& v_block, const std::vector<int>& support,
                                     const Eigen::VectorXd& shift, const WorkItem& item,
                                     const Dataset& data, const EstimationParams& params,
                                     int64_t phi_size, uint64_t sub_seed);

/// Algorithm: verify the variance surrogates B1 = AA' and the single
/// eigencomponent of A (x) A, then run the basic filter on the harmonic probe
/// scaled by 1/beta. A terminal YES is converted to NO. Never returns YES.
BasicOutcome quadratic_multifilter(const QuadContext& ctx, const WorkItem& item,
                                   const Dataset& data, const EstimationParams& params,
                                   uint64_t sub_seed);

} // namespace listdec
