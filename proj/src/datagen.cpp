#include "listdec/datagen.hpp"

#include "listdec/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace listdec {

namespace {

// Stream tags keeping the deterministic sub-generators independent.
constexpr uint64_t kStreamSupport = 0x10;
constexpr uint64_t kStreamSign = 0x11;
constexpr uint64_t kStreamShuffle = 0x12;
constexpr uint64_t kStreamModel = 0x13;
constexpr uint64_t kStreamDecoy = 0x14;

std::vector<int> sparse_support(int d, int k, uint64_t seed, uint64_t stream) {
    std::vector<int> coords(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) coords[static_cast<size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        const uint64_t h = hash_counter(seed, stream, static_cast<uint64_t>(i));
        const auto j = static_cast<size_t>(i) +
                       bounded(h, static_cast<uint64_t>(d - i));
        std::swap(coords[static_cast<size_t>(i)], coords[j]);
    }
    coords.resize(static_cast<size_t>(k));
    std::sort(coords.begin(), coords.end());
    return coords;
}

} // namespace

std::vector<Eigen::VectorXd> make_decoy_means(int d, int k, int count, double magnitude,
                                              uint64_t seed) {
    std::vector<Eigen::VectorXd> means;
    for (int c = 0; c < count; ++c) {
        const uint64_t sub = hash_counter(seed, kStreamDecoy, static_cast<uint64_t>(c));
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
        auto support = sparse_support(d, k, sub, kStreamSupport);
        for (size_t i = 0; i < support.size(); ++i) {
            const uint64_t h = hash_counter(sub, kStreamSign, static_cast<uint64_t>(i));
            mu[support[i]] = (h & 1) ? magnitude : -magnitude;
        }
        means.push_back(std::move(mu));
    }
    return means;
}

LabeledDataset generate(int d, int k, int64_t n, double alpha, double mu_magnitude,
                        const CorruptionModel& model, uint64_t seed) {
    if (d < 1 || k < 1 || k > d) throw std::invalid_argument("generate: need 1 <= k <= d");
    if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("generate: alpha in (0, 1/2]");
    const int64_t n_in = static_cast<int64_t>(std::ceil(2.0 * alpha * static_cast<double>(n)));
    if (n_in < 1) throw std::invalid_argument("generate: inlier count must be at least 1");
    if (const auto* pc = std::get_if<PairCorrelation>(&model)) {
        if (pc->i < 0 || pc->j < 0 || pc->i >= d || pc->j >= d || pc->i == pc->j)
            throw std::invalid_argument("generate: pair correlation coordinates out of range");
        if (!(pc->rho > -1.0 && pc->rho < 1.0))
            throw std::invalid_argument("generate: rho must be in (-1, 1)");
    }
    if (const auto* hc = std::get_if<HypercubeNoise>(&model)) {
        if (!(hc->radius > 0.0)) throw std::invalid_argument("generate: radius must be positive");
    }
    if (const auto* dc = std::get_if<DecoyClusters>(&model)) {
        for (const auto& m : dc->means)
            if (m.size() != d) throw std::invalid_argument("generate: decoy mean dimension");
    }
    if (const auto* pm = std::get_if<PointMass>(&model)) {
        if (pm->location.size() != d)
            throw std::invalid_argument("generate: point mass dimension mismatch");
    }

    Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
    auto support = sparse_support(d, k, seed, kStreamSupport);
    for (size_t i = 0; i < support.size(); ++i) {
        const uint64_t h = hash_counter(seed, kStreamSign, static_cast<uint64_t>(i));
        mu[support[i]] = (h & 1) ? mu_magnitude : -mu_magnitude;
    }

    RowMatrixXd points(n, d);
    std::vector<bool> mask(static_cast<size_t>(n), false);
    for (int64_t i = 0; i < n_in; ++i) {
        mask[static_cast<size_t>(i)] = true;
        for (int j = 0; j < d; ++j)
            points(i, j) = mu[j] + gaussian(seed, static_cast<uint64_t>(i),
                                            static_cast<uint64_t>(j));
    }
    for (int64_t i = n_in; i < n; ++i) {
        const uint64_t hrow = hash_counter(seed, kStreamModel, static_cast<uint64_t>(i));
        if (std::holds_alternative<MirroredMean>(model)) {
            for (int j = 0; j < d; ++j)
                points(i, j) = -mu[j] + gaussian(seed, static_cast<uint64_t>(i),
                                                 static_cast<uint64_t>(j));
        } else if (const auto* pm = std::get_if<PointMass>(&model)) {
            for (int j = 0; j < d; ++j) points(i, j) = pm->location[j];
        } else if (const auto* dc = std::get_if<DecoyClusters>(&model)) {
            const auto c = static_cast<size_t>(
                bounded(hrow, static_cast<uint64_t>(dc->means.size())));
            for (int j = 0; j < d; ++j)
                points(i, j) = dc->means[c][j] +
                               dc->cov_scale * gaussian(seed, static_cast<uint64_t>(i),
                                                        static_cast<uint64_t>(j));
        } else if (const auto* hc = std::get_if<HypercubeNoise>(&model)) {
            for (int j = 0; j < d; ++j)
                points(i, j) = hc->radius * (2.0 * uniform01(seed, static_cast<uint64_t>(i) + (1ULL << 40),
                                                             static_cast<uint64_t>(j)) -
                                             1.0);
        } else {
            const auto& pc = std::get<PairCorrelation>(model);
            for (int j = 0; j < d; ++j)
                points(i, j) = gaussian(seed, static_cast<uint64_t>(i), static_cast<uint64_t>(j));
            points(i, pc.j) = pc.rho * points(i, pc.i) +
                              std::sqrt(1.0 - pc.rho * pc.rho) * points(i, pc.j);
        }
    }

    // Seeded Fisher-Yates; the mask rides along so labels stay aligned.
    for (int64_t i = n - 1; i > 0; --i) {
        const uint64_t h = hash_counter(seed, kStreamShuffle, static_cast<uint64_t>(i));
        const auto j = static_cast<int64_t>(bounded(h, static_cast<uint64_t>(i + 1)));
        points.row(i).swap(points.row(j));
        const bool tmp = mask[static_cast<size_t>(i)];
        mask[static_cast<size_t>(i)] = mask[static_cast<size_t>(j)];
        mask[static_cast<size_t>(j)] = tmp;
    }

    return LabeledDataset{Dataset(std::move(points)), std::move(mask), std::move(mu), seed};
}

} // namespace listdec
