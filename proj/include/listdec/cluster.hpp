#pragma once

#include "listdec/dataset.hpp"
#include "listdec/params.hpp"

#include <cstdint>
#include <vector>

namespace listdec {

struct ClusterOutput {
    std::vector<WorkItem> subsets; // each with alpha_prime = alpha/2
    std::vector<int64_t> centers;  // dataset indices of the chosen centers
};

struct ClusterOptions {
    // Subsets may overlap per the greedy ball construction; the strict
    // variant assigns each point only to the first covering center.
    bool allow_overlap = true;
};

/// Greedy l_inf ball cover: a point becomes a center iff at least
/// ceil(alpha*n) samples lie within 2C*sqrt(gamma) of it and no existing
/// center is within 6C*sqrt(gamma). Subset i collects everything within
/// 6C*sqrt(gamma) of center i. Scan order is dataset index order.
ClusterOutput cluster(const Dataset& data, const EstimationParams& params,
                      const ClusterOptions& options = {});

/// max over coordinates of (max_i x_ij - min_i x_ij) for the subset.
double linf_diameter(const WorkItem& subset, const Dataset& data);

} // namespace listdec
