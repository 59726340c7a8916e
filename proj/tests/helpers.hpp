#pragma once

#include "listdec/dataset.hpp"
#include "listdec/probes.hpp"
#include "listdec/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

namespace testutil {

inline double rand_unit(uint64_t seed, uint64_t stream, uint64_t idx) {
    return listdec::uniform01(seed, stream, idx);
}

inline Eigen::VectorXd random_vector(int d, uint64_t seed, uint64_t stream, double scale = 1.0) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i)
        v[i] = scale * (2.0 * listdec::uniform01(seed, stream, static_cast<uint64_t>(i)) - 1.0);
    return v;
}

inline Eigen::VectorXd gaussian_vector(int d, uint64_t seed, uint64_t stream) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = listdec::gaussian(seed, stream, static_cast<uint64_t>(i));
    return v;
}

inline listdec::Dataset gaussian_dataset(int64_t n, int d, const Eigen::VectorXd& mu,
                                         uint64_t seed) {
    listdec::RowMatrixXd pts(n, d);
    for (int64_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            pts(i, j) = mu[j] + listdec::gaussian(seed, static_cast<uint64_t>(i),
                                                  static_cast<uint64_t>(j));
    return listdec::Dataset(std::move(pts));
}

inline std::vector<int64_t> all_indices(int64_t n) {
    std::vector<int64_t> idx(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    return idx;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Dense evaluation oracle for probes: builds the full d x d matrix / d-vector
// and evaluates without any sparsity shortcuts.
inline double dense_probe_oracle(const listdec::PolyProbe& probe, const Eigen::VectorXd& x,
                                 int d) {
    if (const auto* lin = std::get_if<listdec::SparseLinear>(&probe.poly)) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(d);
        for (size_t i = 0; i < lin->support.size(); ++i) {
            v[lin->support[i]] = lin->coeffs[static_cast<Eigen::Index>(i)];
            shift[lin->support[i]] = lin->shift[static_cast<Eigen::Index>(i)];
        }
        return v.dot(x - shift);
    }
    const auto& quad = std::get<listdec::HarmonicQuadratic>(probe.poly);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(d);
    for (const auto& c : quad.cells) {
        a(c.i, c.j) = c.value;
        a(c.j, c.i) = c.value;
    }
    for (size_t i = 0; i < quad.support.size(); ++i)
        shift[quad.support[i]] = quad.shift[static_cast<Eigen::Index>(i)];
    Eigen::VectorXd y = x - shift;
    return quad.scale * (y.dot(a * y) - a.trace());
}

// Random sparse symmetric matrix with unit Frobenius norm on `support`.
inline listdec::HarmonicQuadratic random_harmonic(const std::vector<int>& support, uint64_t seed,
                                                  double scale) {
    listdec::HarmonicQuadratic h;
    h.support = support;
    h.shift = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(support.size()));
    h.scale = scale;
    uint64_t ctr = 0;
    double frob2 = 0.0;
    for (size_t i = 0; i < support.size(); ++i) {
        for (size_t j = i; j < support.size(); ++j) {
            const double v = 2.0 * listdec::uniform01(seed, 0xA1, ctr++) - 1.0;
            h.cells.push_back({support[i], support[j], v});
            frob2 += (i == j ? 1.0 : 2.0) * v * v;
        }
    }
    const double frob = std::sqrt(frob2);
    for (auto& c : h.cells) c.value /= frob;
    return h;
}

// 64-node Gauss-Hermite rule for the standard normal weight, via the Jacobi
// matrix of the probabilists' Hermite recurrence.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline QuadratureRule gauss_hermite(int m) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) {
        const double b = std::sqrt(static_cast<double>(i));
        jacobi(i, i - 1) = b;
        jacobi(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    QuadratureRule rule;
    for (int i = 0; i < m; ++i) {
        rule.nodes.push_back(solver.eigenvalues()[i]);
        const double w0 = solver.eigenvectors()(0, i);
        rule.weights.push_back(w0 * w0);
    }
    return rule;
}

} // namespace testutil
