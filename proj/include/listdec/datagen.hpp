#pragma once

#include "listdec/dataset.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace listdec {

// Adversary families for the synthetic benchmarks.
struct PointMass {
    Eigen::VectorXd location;
};
struct MirroredMean {};
struct DecoyClusters {
    std::vector<Eigen::VectorXd> means;
    double cov_scale = 1.0;
};
struct HypercubeNoise {
    double radius = 1.0;
};
struct PairCorrelation {
    int i = 0;
    int j = 1;
    double rho = 0.0;
};
using CorruptionModel =
    std::variant<PointMass, MirroredMean, DecoyClusters, HypercubeNoise, PairCorrelation>;

struct LabeledDataset {
    Dataset dataset;
    std::vector<bool> inlier_mask; // exactly ceil(2*alpha*n) true entries
    Eigen::VectorXd true_mean;     // k-sparse
    uint64_t seed = 0;
};

/// Seeded generation: k-sparse mean with +-mu_magnitude entries, inliers
/// N(mu, I), outliers from the model, order shuffled. Gaussian draws are a
/// pure function of (seed, point index, coordinate index).
LabeledDataset generate(int d, int k, int64_t n, double alpha, double mu_magnitude,
                        const CorruptionModel& model, uint64_t seed);

/// Seeded k-sparse decoy means for the DecoyClusters adversary.
std::vector<Eigen::VectorXd> make_decoy_means(int d, int k, int count, double magnitude,
                                              uint64_t seed);

} // namespace listdec
