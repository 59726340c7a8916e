#pragma once

#include "listdec/cluster.hpp"
#include "listdec/multifilter.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace listdec {

struct BranchCounts {
    int64_t candidate = 0;
    int64_t linear = 0;
    int64_t quadratic = 0;
    int64_t reject = 0;
    int64_t split1 = 0;
    int64_t split2 = 0;
};

struct RunTrace {
    int64_t nodes_processed = 0;
    BranchCounts branch_counts;
    int64_t max_depth = 0;
    int64_t dropped_small = 0;     // children with fewer than 2 points
    int64_t dropped_alpha = 0;     // children with alpha' > 1
    int64_t potential_violations = 0; // iterations where sum 1/alpha_i^2 grew
    std::chrono::duration<double> wall_time{0.0};
};

struct ReductionParams {
    double beta = 0.0;  // claimed candidate accuracy
    double delta = 0.0; // representative-set slack
    double t = 0.0;     // Gaussian projection tail bound

    static ReductionParams defaults(const EstimationParams& params, int64_t n,
                                    double accuracy_constant = 1.0);
};

struct CandidateList {
    std::vector<Eigen::VectorXd> pre;  // M, lexicographically sorted
    std::vector<Eigen::VectorXd> post; // M' after reduction
};

struct RunOptions {
    int64_t node_budget = 0; // 0 = 10 * (4/alpha^2 + 1/alpha + 1)
    uint64_t master_seed = 0;
    double accuracy_constant = 1.0; // the frozen c in the default reduction beta
    ClusterOptions cluster_options{};
    // Observer for every processed node; used by the test suites.
    std::function<void(const WorkItem&, const FilterOutcome&, const MultifilterDiag&)> observer;
};

class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(std::string what, CandidateList partial, RunTrace trace)
        : std::runtime_error(std::move(what)), partial_list(std::move(partial)),
          trace(std::move(trace)) {}

    CandidateList partial_list;
    RunTrace trace;
};

/// Slab-support pruning of the candidate list down to O(1/alpha) entries.
std::vector<Eigen::VectorXd> list_reduction(const std::vector<Eigen::VectorXd>& candidates,
                                            const Dataset& data, double alpha,
                                            const ReductionParams& rp);

/// Full pipeline: cluster, FIFO multifilter tree, lexicographic
/// canonicalization of M, list reduction. Deterministic given (data bytes,
/// params, master seed).
std::pair<CandidateList, RunTrace> run_list_decode(const Dataset& data,
                                                   const EstimationParams& params,
                                                   const RunOptions& options = {});

} // namespace listdec
