#pragma once

#include "listdec/filter_quadratic.hpp"
#include "listdec/hard_threshold.hpp"
#include "listdec/outcomes.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace listdec {

/// Restricted moments of a work item: the sample mean and the k^2
/// largest-magnitude cells of (Sigma - I), k diagonal plus (k^2-k)/2
/// symmetric off-diagonal pairs.
struct MomentSummary {
    Eigen::VectorXd mean;                // length d
    std::vector<SparseCell> top_entries; // i <= j; pairs counted twice in frob
    double frob_selected = 0.0;
};

struct IndexSelection {
    std::vector<std::pair<int, int>> u_set; // selected cells, i <= j
    std::vector<int> omega;                 // sorted coordinate support of U
    // U' is the product closure rows(U) x cols(U) = omega x omega.
};

/// Blockwise covariance-discrepancy scan. Peak memory O(n*d + tile^2); the
/// d x d matrix is never materialized. Ties in the selection break toward
/// lexicographically smaller (i, j).
std::pair<MomentSummary, IndexSelection> moment_summary(const WorkItem& item, const Dataset& data,
                                                        int k);

/// Largest eigenvalue (by signed value) and its unit eigenvector, via power
/// iteration on the Gershgorin-shifted block. Throws after 1e4 iterations
/// without Rayleigh-quotient convergence.
std::pair<double, Eigen::VectorXd> leading_eig(const Eigen::MatrixXd& sym, double tol = 1e-12);

enum class FilterBranch { kCandidate, kLinear, kQuadratic };

struct MultifilterDiag {
    FilterBranch branch = FilterBranch::kCandidate;
    double frob_selected = 0.0;
    double lambda_star = 0.0;
    double threshold = 0.0;
};

/// Algorithm: moment scan, then one of (i) candidate hard_k(mean) when the
/// selected Frobenius norm is small, (ii) linear filtering along the leading
/// eigenvector of the omega x omega block, (iii) quadratic filtering on the
/// normalized selected cells.
FilterOutcome attribute_efficient_multifilter(const WorkItem& item, const Dataset& data,
                                              const EstimationParams& params, double tau_call,
                                              uint64_t sub_seed,
                                              MultifilterDiag* diag = nullptr);

} // namespace listdec
