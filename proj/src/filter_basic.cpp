#include "listdec/filter_basic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace listdec {

BasicThresholds BasicThresholds::compute(const EstimationParams& params, double alpha,
                                         int degree) {
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("basic multifilter supports probe degree 1 or 2");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("basic multifilter alpha must be in (0, 1]");
    const double c = params.big_c();
    const double log_inv = std::log(1.0 / alpha);
    const double log_log = std::log(2.0 + log_inv);
    const double s = static_cast<double>(params.sparsity_budget());
    BasicThresholds th;
    th.big_r = std::pow(c * log_inv, degree / 2.0);
    th.interval_len = c * th.big_r * log_log;
    th.variance_cap = c * std::pow(log_inv, degree) * log_log * log_log;
    th.value_cap = std::pow(c * (1.0 + s * params.gamma() / degree), degree / 2.0);
    return th;
}

std::optional<std::pair<double, double>> find_dense_interval(const std::vector<double>& sorted_values,
                                                             double alpha, double len) {
    const int64_t n = static_cast<int64_t>(sorted_values.size());
    if (n == 0) return std::nullopt;
    const int64_t need =
        static_cast<int64_t>(std::ceil((1.0 - alpha / 2.0) * static_cast<double>(n)));
    int64_t hi = 0;
    for (int64_t lo = 0; lo < n; ++lo) {
        if (hi < lo) hi = lo;
        while (hi + 1 < n && sorted_values[hi + 1] <= sorted_values[lo] + len) ++hi;
        if (hi - lo + 1 >= need) return std::make_pair(sorted_values[lo], sorted_values[lo] + len);
    }
    return std::nullopt;
}

std::optional<double> find_tail_threshold(const std::vector<double>& values, double a, double b,
                                          double alpha, const EstimationParams& params, int degree,
                                          double big_r) {
    if (a > b) throw std::invalid_argument("find_tail_threshold: requires a <= b");
    const int64_t n = static_cast<int64_t>(values.size());
    std::vector<double> dist(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        dist[i] = std::min(std::abs(values[i] - a), std::abs(values[i] - b));
    std::sort(dist.begin(), dist.end());
    const double s_gamma = static_cast<double>(params.sparsity_budget()) * params.gamma();
    const double floor_term = 2.0 * alpha * alpha / (s_gamma * s_gamma);
    for (int64_t i = 0; i < n; ++i) {
        if (i > 0 && dist[i] == dist[i - 1]) continue;
        const double t = dist[i];
        if (!(t > 2.0 * big_r)) continue;
        const double tail = static_cast<double>(n - i) / static_cast<double>(n);
        const double bound =
            (32.0 / alpha) * std::exp(-std::pow(t - 2.0 * big_r, 2.0 / degree)) + floor_term;
        if (tail > bound) return t;
    }
    return std::nullopt;
}

std::optional<SplitSpec> find_split(const std::vector<double>& values, double alpha) {
    const int64_t n = static_cast<int64_t>(values.size());
    if (n == 0) return std::nullopt;
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const double range = sorted.back() - sorted.front();
    if (range == 0.0) return std::nullopt;

    // Midpoints between consecutive distinct values, widest gap first, so
    // separated clusters split at the gap rather than through a bulk.
    struct Mid {
        double t;
        double gap;
    };
    std::vector<Mid> mids;
    for (int64_t i = 0; i + 1 < n; ++i) {
        if (sorted[i] == sorted[i + 1]) continue;
        mids.push_back({0.5 * (sorted[i] + sorted[i + 1]), sorted[i + 1] - sorted[i]});
    }
    std::stable_sort(mids.begin(), mids.end(), [](const Mid& x, const Mid& y) {
        if (x.gap != y.gap) return x.gap > y.gap;
        return x.t < y.t;
    });

    std::vector<double> radii;
    radii.push_back(0.0);
    for (int j = 1; j < 32; ++j) radii.push_back(0.5 * range * std::pow(2.0, j - 31));

    const double cap = static_cast<double>(n) * static_cast<double>(n) *
                       (1.0 - alpha / 100.0) * (1.0 - alpha / 100.0);
    const double min_cut = alpha * static_cast<double>(n) / 4.0;

    for (const Mid& m : mids) {
        for (double r : radii) {
            // |T1| = #{v > t-r}, |T2| = #{v < t+r}
            const auto above = sorted.end() -
                               std::upper_bound(sorted.begin(), sorted.end(), m.t - r);
            const auto below = std::lower_bound(sorted.begin(), sorted.end(), m.t + r) -
                               sorted.begin();
            const double n1 = static_cast<double>(above);
            const double n2 = static_cast<double>(below);
            if (n1 * n1 + n2 * n2 > cap) continue;
            if (static_cast<double>(n) - std::max(n1, n2) < min_cut) continue;
            SplitSpec spec;
            spec.t = m.t;
            spec.r = r;
            for (int64_t i = 0; i < n; ++i) {
                if (values[static_cast<size_t>(i)] > m.t - r) spec.part1.push_back(i);
                if (values[static_cast<size_t>(i)] < m.t + r) spec.part2.push_back(i);
            }
            return spec;
        }
    }
    return std::nullopt;
}

namespace {

WorkItem split_item(const WorkItem& parent, const std::vector<int64_t>& positions, double alpha) {
    std::vector<int64_t> subset;
    subset.reserve(positions.size());
    for (int64_t p : positions) subset.push_back(parent.subset[static_cast<size_t>(p)]);
    return WorkItem{std::move(subset), alpha};
}

} // namespace

BasicOutcome basic_multifilter_values(const std::vector<double>& values, const WorkItem& item,
                                      int degree, const EstimationParams& params) {
    const int64_t n = static_cast<int64_t>(values.size());
    if (n == 0) throw std::invalid_argument("basic multifilter requires a nonempty subset");
    const double alpha = item.alpha_prime;
    const BasicThresholds th = BasicThresholds::compute(params, alpha, degree);

    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    if (*max_it - *min_it >= th.value_cap)
        return BasicNo{"value range exceeds the sparse-polynomial cap"};

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());

    auto interval = find_dense_interval(sorted, alpha, th.interval_len);
    if (interval) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n);
        if (var <= th.variance_cap) return BasicYes{mean, var};

        const auto [a, b] = *interval;
        auto t = find_tail_threshold(values, a, b, alpha, params, degree, th.big_r);
        if (t) {
            std::vector<int64_t> kept;
            for (int64_t i = 0; i < n; ++i) {
                double m = std::min(std::abs(values[static_cast<size_t>(i)] - a),
                                    std::abs(values[static_cast<size_t>(i)] - b));
                if (m <= *t) kept.push_back(i);
            }
            if (static_cast<int64_t>(kept.size()) < n) {
                const double ratio =
                    static_cast<double>(n) / static_cast<double>(kept.size());
                const double alpha_child = alpha * ((1.0 - alpha / 8.0) * ratio + alpha / 8.0);
                return SplitOne{split_item(item, kept, alpha_child)};
            }
            // Threshold removed nothing; treat step 4(b) as structurally failed.
        }
    }

    auto split = find_split(values, alpha);
    if (split) {
        const double scale = alpha * (1.0 - alpha * alpha / 100.0) * static_cast<double>(n);
        const double a1 = scale / static_cast<double>(split->part1.size());
        const double a2 = scale / static_cast<double>(split->part2.size());
        return SplitTwo{split_item(item, split->part1, a1), split_item(item, split->part2, a2)};
    }
    return BasicNo{"no dense interval, tail threshold, or two-way split exists"};
}

BasicOutcome basic_multifilter(const PolyProbe& probe, const WorkItem& item, const Dataset& data,
                               const EstimationParams& params) {
    std::vector<double> values;
    values.reserve(item.subset.size());
    for (int64_t idx : item.subset) values.push_back(eval_probe(probe, data.point(idx)));
    return basic_multifilter_values(values, item, probe.degree(), params);
}

} // namespace listdec
