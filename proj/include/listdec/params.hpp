#pragma once

#include <cstdint>

namespace listdec {

/// Global estimation parameters. Immutable after construction; gamma is
/// computed once here and every threshold in the pipeline reads it from
/// this struct.
class EstimationParams {
public:
    EstimationParams(double alpha, double tau, int k, int d, double big_c = 4.0);

    double alpha() const { return alpha_; }
    double tau() const { return tau_; }
    int k() const { return k_; }
    int d() const { return d_; }
    double big_c() const { return big_c_; }
    double gamma() const { return gamma_; }

    // Sparsity budget for probe supports: the selected index set spans at
    // most 2k^2 - k coordinates, which can exceed the k^2 of the selected
    // cells themselves.
    int sparsity_budget() const { return 2 * k_ * k_ - k_; }

private:
    double alpha_;
    double tau_;
    int k_;
    int d_;
    double big_c_;
    double gamma_;
};

/// Sample count ceil(scale * alpha^-7 * k^12 * log(d/tau) * gamma^4).
/// Throws if the result overflows a 64-bit integer; the message carries the
/// real value.
int64_t required_sample_size(const EstimationParams& params, double scale);

} // namespace listdec
