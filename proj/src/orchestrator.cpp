#include "listdec/orchestrator.hpp"

#include "listdec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace listdec {

ReductionParams ReductionParams::defaults(const EstimationParams& params, int64_t n,
                                          double accuracy_constant) {
    const double alpha = params.alpha();
    const double log_inv = std::log(1.0 / alpha);
    ReductionParams rp;
    rp.beta = accuracy_constant * std::sqrt(log_inv / alpha) * std::log(2.0 + log_inv);
    rp.t = std::sqrt(2.0 * std::log(2.0 * static_cast<double>(n) / alpha));
    rp.delta = alpha * alpha * alpha / 100.0;
    return rp;
}

std::vector<Eigen::VectorXd> list_reduction(const std::vector<Eigen::VectorXd>& candidates,
                                            const Dataset& data, double alpha,
                                            const ReductionParams& rp) {
    const size_t n_cand = candidates.size();
    if (n_cand == 0) return {};
    if (rp.delta * static_cast<double>(n_cand) > 0.1)
        throw std::invalid_argument("list_reduction: delta * |M| must stay below 0.1");

    const int64_t n = data.n();
    const double width = rp.beta + rp.t;
    std::vector<std::vector<char>> in_slab(n_cand, std::vector<char>(static_cast<size_t>(n), 1));

    for (size_t i = 0; i < n_cand; ++i) {
        for (size_t j = i + 1; j < n_cand; ++j) {
            Eigen::VectorXd diff = candidates[i] - candidates[j];
            const double norm = diff.norm();
            if (norm == 0.0) continue; // co-located candidates share slabs
            diff /= norm;
            Eigen::VectorXd proj = data.points() * diff;
            const double ci = diff.dot(candidates[i]);
            const double cj = diff.dot(candidates[j]);
            for (int64_t x = 0; x < n; ++x) {
                const double p = proj[x];
                if (!(std::abs(p - ci) < width)) in_slab[i][static_cast<size_t>(x)] = 0;
                if (!(std::abs(p - cj) < width)) in_slab[j][static_cast<size_t>(x)] = 0;
            }
        }
    }

    const double support_need =
        alpha * (1.0 - rp.delta * static_cast<double>(n_cand)) * static_cast<double>(n);
    std::vector<Eigen::VectorXd> kept;
    for (size_t i = 0; i < n_cand; ++i) {
        int64_t count = 0;
        for (char c : in_slab[i]) count += c;
        if (static_cast<double>(count) < support_need) continue;
        bool close = false;
        for (const auto& mu : kept) {
            if ((candidates[i] - mu).norm() < 2.0 * width) {
                close = true;
                break;
            }
        }
        if (!close) kept.push_back(candidates[i]);
    }
    return kept;
}

namespace {

struct QueueEntry {
    WorkItem item;
    int64_t depth;
    uint64_t sub_seed;
};

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

} // namespace

std::pair<CandidateList, RunTrace> run_list_decode(const Dataset& data,
                                                   const EstimationParams& params,
                                                   const RunOptions& options) {
    if (data.n() < 2) throw std::invalid_argument("run_list_decode: need at least 2 samples");
    const auto start = std::chrono::steady_clock::now();
    const double alpha = params.alpha();
    const int64_t budget =
        options.node_budget > 0
            ? options.node_budget
            : static_cast<int64_t>(std::ceil(10.0 * (4.0 / (alpha * alpha) + 1.0 / alpha + 1.0)));
    const double tau_call = params.tau() / static_cast<double>(data.n());

    RunTrace trace;
    CandidateList list;
    ClusterOutput clusters = cluster(data, params, options.cluster_options);

    std::deque<QueueEntry> work;
    uint64_t creation_counter = 0;
    auto enqueue = [&](WorkItem&& item, int64_t depth) {
        if (item.alpha_prime > 1.0) {
            ++trace.dropped_alpha;
            return;
        }
        if (item.subset.size() < 2) {
            ++trace.dropped_small;
            return;
        }
        work.push_back({std::move(item), depth, derive_seed(options.master_seed,
                                                            creation_counter++)});
    };
    for (auto& subset : clusters.subsets) enqueue(std::move(subset), 1);

    auto potential = [&]() {
        double p = 0.0;
        for (const auto& e : work) p += 1.0 / (e.item.alpha_prime * e.item.alpha_prime);
        return p;
    };
    double pot_before = potential();

    while (!work.empty()) {
        if (trace.nodes_processed >= budget) {
            trace.wall_time = std::chrono::steady_clock::now() - start;
            std::sort(list.pre.begin(), list.pre.end(), lex_less);
            throw BudgetExhausted("node budget exhausted after " +
                                      std::to_string(trace.nodes_processed) + " nodes",
                                  std::move(list), trace);
        }
        QueueEntry entry = std::move(work.front());
        work.pop_front();
        ++trace.nodes_processed;
        trace.max_depth = std::max(trace.max_depth, entry.depth);

        MultifilterDiag diag;
        FilterOutcome outcome =
            attribute_efficient_multifilter(entry.item, data, params, tau_call, entry.sub_seed,
                                            &diag);
        switch (diag.branch) {
        case FilterBranch::kCandidate: ++trace.branch_counts.candidate; break;
        case FilterBranch::kLinear: ++trace.branch_counts.linear; break;
        case FilterBranch::kQuadratic: ++trace.branch_counts.quadratic; break;
        }
        if (options.observer) options.observer(entry.item, outcome, diag);

        if (auto* cand = std::get_if<Candidate>(&outcome)) {
            list.pre.push_back(std::move(cand->mu_hat));
        } else if (auto* split = std::get_if<Split>(&outcome)) {
            if (split->items.size() == 1)
                ++trace.branch_counts.split1;
            else
                ++trace.branch_counts.split2;
            for (auto& child : split->items) enqueue(std::move(child), entry.depth + 1);
        } else {
            ++trace.branch_counts.reject;
        }

        const double pot_after = potential();
        if (pot_after > pot_before + 1e-9) ++trace.potential_violations;
        pot_before = pot_after;
    }

    std::sort(list.pre.begin(), list.pre.end(), lex_less);
    ReductionParams rp = ReductionParams::defaults(params, data.n(), options.accuracy_constant);
    list.post = list_reduction(list.pre, data, alpha, rp);
    trace.wall_time = std::chrono::steady_clock::now() - start;
    return {std::move(list), trace};
}

} // namespace listdec
