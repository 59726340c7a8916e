#pragma once

#include "listdec/dataset.hpp"
#include "listdec/outcomes.hpp"
#include "listdec/params.hpp"
#include "listdec/probes.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace listdec {

/// Per-call thresholds of the basic multifilter for a degree-l probe at
/// purity alpha. The k^2 appearing in the paper-level formulas is replaced
/// by the probe sparsity budget s = 2k^2 - k throughout.
struct BasicThresholds {
    double big_r = 0.0;       // R = (C log(1/alpha))^(l/2)
    double interval_len = 0.0; // L = C * R * log(2 + log(1/alpha))
    double variance_cap = 0.0; // C (log(1/alpha))^l log^2(2 + log(1/alpha))
    double value_cap = 0.0;    // (C (1 + s*gamma/l))^(l/2)

    static BasicThresholds compute(const EstimationParams& params, double alpha, int degree);
};

/// Leftmost window [v, v+len] covering at least ceil((1-alpha/2)*n) of the
/// sorted values; closed endpoints.
std::optional<std::pair<double, double>> find_dense_interval(const std::vector<double>& sorted_values,
                                                             double alpha, double len);

/// Smallest attained value t > 2R of m(x) = min(|p(x)-a|, |p(x)-b|) whose
/// empirical tail fraction strictly exceeds
/// (32/alpha) exp(-(t-2R)^(2/l)) + 2 alpha^2 / (s*gamma)^2.
std::optional<double> find_tail_threshold(const std::vector<double>& values, double a, double b,
                                          double alpha, const EstimationParams& params, int degree,
                                          double big_r);

struct SplitSpec {
    double t = 0.0;
    double r = 0.0;
    std::vector<int64_t> part1; // positions into the values array, ascending
    std::vector<int64_t> part2;
};

/// Two-way split search: t over midpoints of consecutive distinct values
/// enumerated from the most balanced outward, r over {0} followed by a
/// geometric grid up to half the value range (32 radii total). First (t, r)
/// with |T1|^2+|T2|^2 <= n^2 (1-alpha/100)^2 and n - max(|T1|,|T2|) >= alpha*n/4.
std::optional<SplitSpec> find_split(const std::vector<double>& values, double alpha);

/// Algorithm: evaluate the probe once per sample, reject when the value range
/// exceeds the cap, certify concentration, or emit a one- or two-way split
/// satisfying the multifilter condition. Split items may carry alpha' > 1;
/// the orchestrator discards those.
BasicOutcome basic_multifilter(const PolyProbe& probe, const WorkItem& item, const Dataset& data,
                               const EstimationParams& params);

/// Same flow on precomputed probe values (values[i] belongs to subset[i]).
BasicOutcome basic_multifilter_values(const std::vector<double>& values, const WorkItem& item,
                                      int degree, const EstimationParams& params);

} // namespace listdec
