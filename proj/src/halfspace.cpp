#include "listdec/halfspace.hpp"

#include <cmath>
#include <stdexcept>

namespace listdec {

Dataset reduce_to_mean(const std::vector<LabeledSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("reduce_to_mean: samples must be nonempty");
    const Eigen::Index d = samples.front().x.size();
    const double scale = std::sqrt(M_PI / 2.0);
    RowMatrixXd points(static_cast<Eigen::Index>(samples.size()), d);
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (s.x.size() != d) throw std::invalid_argument("reduce_to_mean: dimension mismatch");
        if (s.y != 1 && s.y != -1) throw std::invalid_argument("reduce_to_mean: labels must be +-1");
        points.row(static_cast<Eigen::Index>(i)) = scale * static_cast<double>(s.y) *
                                                   s.x.transpose();
    }
    return Dataset(std::move(points));
}

std::vector<HalfspaceHypothesis> learn_halfspaces(const std::vector<LabeledSample>& samples,
                                                  const EstimationParams& params,
                                                  const RunOptions& options) {
    Dataset reduced = reduce_to_mean(samples);
    auto [list, trace] = run_list_decode(reduced, params, options);
    (void)trace;
    std::vector<HalfspaceHypothesis> hypotheses;
    hypotheses.reserve(list.post.size());
    for (auto& mu : list.post) hypotheses.push_back({std::move(mu), false});
    return hypotheses;
}

double disagreement(const Eigen::VectorXd& w1, const Eigen::VectorXd& w2) {
    const double n1 = w1.norm(), n2 = w2.norm();
    if (n1 == 0.0 || n2 == 0.0)
        throw std::invalid_argument("disagreement: hypotheses must be nonzero");
    const double c = std::clamp(w1.dot(w2) / (n1 * n2), -1.0, 1.0);
    return std::acos(c) / M_PI;
}

} // namespace listdec
