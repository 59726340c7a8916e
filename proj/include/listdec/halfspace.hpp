#pragma once

#include "listdec/orchestrator.hpp"

#include <vector>

namespace listdec {

struct LabeledSample {
    Eigen::VectorXd x;
    int y = 1; // +1 or -1
};

struct HalfspaceHypothesis {
    Eigen::VectorXd w;
    bool normalized = false;
};

/// z_i = sqrt(pi/2) * y_i * x_i, order preserved.
Dataset reduce_to_mean(const std::vector<LabeledSample>& samples);

/// Runs the list-decodable mean estimator on the reduced samples; each
/// candidate becomes an (unnormalized) hypothesis.
std::vector<HalfspaceHypothesis> learn_halfspaces(const std::vector<LabeledSample>& samples,
                                                  const EstimationParams& params,
                                                  const RunOptions& options = {});

/// Pr[sign(w1.x) != sign(w2.x)] for x ~ N(0, I): arccos(<w1_hat, w2_hat>)/pi.
double disagreement(const Eigen::VectorXd& w1, const Eigen::VectorXd& w2);

} // namespace listdec
