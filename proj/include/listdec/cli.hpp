#pragma once

#include "listdec/datagen.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace listdec {

/// One experiment invocation. The canonical text form round-trips
/// byte-identically through parse_config.
struct ExperimentConfig {
    std::string command;      // gen | estimate | halfspace | sweep
    std::string dataset_path; // input dataset (estimate) or unused
    std::vector<double> alphas{0.5};
    double tau = 0.05;
    int k = 5;
    int d = 100;
    int64_t n = 5000;
    double big_c = 4.0;
    double scale = 1.0;
    double mu_magnitude = 5.0;
    std::string model = "mirrored";
    std::vector<uint64_t> seeds{0};
    std::string out_path;
    int64_t budget = 0; // 0 = default

    std::string to_text() const;
};

ExperimentConfig parse_config(const std::string& text);

/// Model spec strings: "mirrored", "pointmass:<c>" (mass at c*e1),
/// "decoy:<count>,<cov_scale>,<magnitude>", "hypercube:<radius>",
/// "paircorr:<i>,<j>,<rho>".
CorruptionModel parse_model(const std::string& spec, int d, int k, uint64_t seed);

// Exit codes: 0 success, 2 malformed input, 3 node budget exhausted,
// 1 internal error.
int cmd_gen(const ExperimentConfig& config);
int cmd_estimate(const ExperimentConfig& config);
int cmd_halfspace(const ExperimentConfig& config);
int cmd_sweep(const ExperimentConfig& config);

int worker_pool_size(int64_t jobs);

} // namespace listdec
