#include "listdec/probes.hpp"

#include <cmath>
#include <stdexcept>

namespace listdec {

double HarmonicQuadratic::trace() const {
    double t = 0.0;
    for (const auto& c : cells)
        if (c.i == c.j) t += c.value;
    return t;
}

double HarmonicQuadratic::frobenius() const {
    double s = 0.0;
    for (const auto& c : cells) s += (c.i == c.j ? 1.0 : 2.0) * c.value * c.value;
    return std::sqrt(s);
}

double hermite_eval(int a, double x) {
    if (a < 0 || a > 64)
        throw std::invalid_argument("hermite_eval: degree must be in [0, 64]");
    if (a == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int i = 1; i < a; ++i) {
        double next = x * cur - static_cast<double>(i) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

int support_pos(const std::vector<int>& support, int coord) {
    auto it = std::lower_bound(support.begin(), support.end(), coord);
    return static_cast<int>(it - support.begin());
}

} // namespace

double eval_probe(const PolyProbe& probe, Eigen::Ref<const Eigen::RowVectorXd> x) {
    if (const auto* lin = std::get_if<SparseLinear>(&probe.poly)) {
        double acc = 0.0;
        for (size_t i = 0; i < lin->support.size(); ++i)
            acc += lin->coeffs[static_cast<Eigen::Index>(i)] *
                   (x[lin->support[i]] - lin->shift[static_cast<Eigen::Index>(i)]);
        return acc;
    }
    const auto& quad = std::get<HarmonicQuadratic>(probe.poly);
    double acc = 0.0;
    for (const auto& c : quad.cells) {
        double yi = x[c.i] - quad.shift[support_pos(quad.support, c.i)];
        if (c.i == c.j) {
            acc += c.value * yi * yi;
        } else {
            double yj = x[c.j] - quad.shift[support_pos(quad.support, c.j)];
            acc += 2.0 * c.value * yi * yj;
        }
    }
    return quad.scale * (acc - quad.trace());
}

GaussianMoments gaussian_moments(const PolyProbe& probe, const Eigen::VectorXd& mu_support) {
    if (const auto* lin = std::get_if<SparseLinear>(&probe.poly)) {
        double mean = lin->coeffs.dot(mu_support - lin->shift);
        double second = mean * mean + lin->coeffs.squaredNorm();
        return {mean, second};
    }
    // Quadratic: with m = mu - shift and unit-Frobenius A,
    //   E[(Y'AY - trA)]   = m'Am
    //   E[(Y'AY - trA)^2] = (m'Am)^2 + 4 ||Am||^2 + 2 ||A||_F^2
    // assembled from the multilinear surrogates B0 = ||A||_F^2, B1 = AA',
    // B2 = A (x) A (rank one, never materialized).
    const auto& quad = std::get<HarmonicQuadratic>(probe.poly);
    const int s = static_cast<int>(quad.support.size());
    Eigen::VectorXd m = mu_support - quad.shift;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s, s);
    for (const auto& c : quad.cells) {
        int pi = support_pos(quad.support, c.i);
        int pj = support_pos(quad.support, c.j);
        a(pi, pj) = c.value;
        a(pj, pi) = c.value;
    }
    double hom_a = m.dot(a * m);
    double am2 = (a * m).squaredNorm();
    double frob2 = a.squaredNorm();
    double raw_mean = hom_a;
    double raw_second = hom_a * hom_a + 4.0 * am2 + 2.0 * frob2;
    double sc = quad.scale;
    return {sc * raw_mean, sc * sc * raw_second};
}

Eigen::MatrixXd restrict_centered(const Dataset& data, const std::vector<int64_t>& subset,
                                  const std::vector<int>& support, const Eigen::VectorXd& shift) {
    const auto ni = static_cast<Eigen::Index>(subset.size());
    const auto s = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd out(ni, s);
    for (Eigen::Index r = 0; r < ni; ++r) {
        auto row = data.point(subset[static_cast<size_t>(r)]);
        for (Eigen::Index c = 0; c < s; ++c)
            out(r, c) = row[support[static_cast<size_t>(c)]] - shift[c];
    }
    return out;
}

} // namespace listdec
