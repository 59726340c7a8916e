#pragma once

#include "listdec/dataset.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <variant>
#include <vector>

namespace listdec {

/// Sparse linear form: sum_i coeffs[i] * (x[support[i]] - shift[i]).
/// Filter probes carry unit-norm coefficients.
struct SparseLinear {
    std::vector<int> support;    // sorted, unique, in [0, d)
    Eigen::VectorXd coeffs;      // aligned with support
    Eigen::VectorXd shift;       // aligned with support; may be zero
};

struct SparseCell {
    int i = 0;
    int j = 0; // i <= j; off-diagonal cells stand for both (i,j) and (j,i)
    double value = 0.0;
};

/// Sparse symmetric quadratic with unit Frobenius norm, evaluated as
/// scale * ((x-shift)' A (x-shift) - tr A). scale = 1/sqrt(2) gives the
/// degree-2 harmonic normalization h_A.
struct HarmonicQuadratic {
    std::vector<SparseCell> cells; // upper triangle of A, ||A||_F = 1
    std::vector<int> support;      // sorted union of cell coordinates
    Eigen::VectorXd shift;         // aligned with support
    double scale = 1.0;

    double trace() const;
    double frobenius() const; // counts off-diagonal cells twice
};

struct PolyProbe {
    std::variant<SparseLinear, HarmonicQuadratic> poly;

    int degree() const { return std::holds_alternative<SparseLinear>(poly) ? 1 : 2; }
};

/// Probabilists' Hermite polynomial He_a(x) by the three-term recurrence.
/// Guard a <= 64.
double hermite_eval(int a, double x);

/// Evaluates a probe at a full-dimensional point, touching only the
/// probe's support.
double eval_probe(const PolyProbe& probe, Eigen::Ref<const Eigen::RowVectorXd> x);

struct GaussianMoments {
    double mean = 0.0;
    double second_moment = 0.0;
};

/// Mean and second moment of probe(X) for X ~ N(mu, I), where mu_support is
/// the true mean restricted to the probe support (aligned with it).
GaussianMoments gaussian_moments(const PolyProbe& probe, const Eigen::VectorXd& mu_support);

/// Builds a probe-support view of the subset: rows are (x - shift) restricted
/// to `support`, in subset order. Shared by the filter layer.
Eigen::MatrixXd restrict_centered(const Dataset& data, const std::vector<int64_t>& subset,
                                  const std::vector<int>& support, const Eigen::VectorXd& shift);

} // namespace listdec
