#include "listdec/filter_quadratic.hpp"

#include "listdec/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace listdec {

namespace {

constexpr double kLambdaTolFactor = 1e-12;
constexpr double kQTol = 1e-12;
constexpr uint64_t kPhiStream = 1;

Eigen::VectorXd fix_sign(Eigen::VectorXd v) {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0.0) v = -v;
    return v;
}

} // namespace

QuadContext QuadContext::compute(HarmonicQuadratic a, double alpha, double tau_call,
                                 const EstimationParams& params) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("QuadContext: alpha must be in (0, 1]");
    if (!(tau_call > 0.0 && tau_call < 1.0))
        throw std::invalid_argument("QuadContext: tau must be in (0, 1)");
    if (std::abs(a.frobenius() - 1.0) > 1e-9)
        throw std::invalid_argument("QuadContext: A must have unit Frobenius norm");
    QuadContext ctx;
    ctx.a_matrix = std::move(a);
    const double log_inv = std::log(1.0 / alpha);
    const double log_log = std::log(2.0 + log_inv);
    ctx.beta = params.big_c() * log_inv * log_log * log_log;
    ctx.phi_size = static_cast<int64_t>(std::ceil(200.0 / alpha * std::log(4.0 / tau_call)));
    return ctx;
}

BasicOutcome degree2_homogeneous(const Eigen::MatrixXd& b_block, const std::vector<int>& support,
                                 const Eigen::VectorXd& shift, const WorkItem& item,
                                 const Dataset& data, const EstimationParams& params) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b_block);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("degree2_homogeneous: eigendecomposition did not converge");
    const Eigen::VectorXd& lambdas = solver.eigenvalues(); // ascending
    double nuclear = lambdas.cwiseAbs().sum();
    if (nuclear > 1.0 + 1e-9)
        throw std::invalid_argument("degree2_homogeneous: nuclear norm exceeds 1");
    double max_abs = lambdas.cwiseAbs().maxCoeff();
    const double tol = kLambdaTolFactor * max_abs;
    for (Eigen::Index i = lambdas.size() - 1; i >= 0; --i) {
        if (!(lambdas[i] > tol)) break; // descending scan; the rest are below tolerance
        SparseLinear probe{support, fix_sign(solver.eigenvectors().col(i)), shift};
        BasicOutcome r = basic_multifilter(PolyProbe{std::move(probe)}, item, data, params);
        if (!is_yes(r)) return r;
    }
    return BasicYes{};
}

BasicOutcome multilinear_multifilter(const Eigen::MatrixXd& v_block, const std::vector<int>& support,
                                     const Eigen::VectorXd& shift, const WorkItem& item,
                                     const Dataset& data, const EstimationParams& params,
                                     int64_t phi_size, uint64_t sub_seed) {
    Eigen::MatrixXd vtv = v_block.transpose() * v_block;
    BasicOutcome r = degree2_homogeneous(vtv, support, shift, item, data, params);
    if (!is_yes(r)) return r;

    const int64_t n_sub = static_cast<int64_t>(item.subset.size());
    std::unordered_set<int64_t> seen; // duplicate draws repeat a verified probe
    for (int64_t j = 0; j < phi_size; ++j) {
        const int64_t pos = static_cast<int64_t>(
            bounded(hash_counter(sub_seed, kPhiStream, static_cast<uint64_t>(j)),
                    static_cast<uint64_t>(n_sub)));
        if (!seen.insert(pos).second) continue;
        const int64_t idx = item.subset[static_cast<size_t>(pos)];
        Eigen::VectorXd y(support.size());
        for (size_t c = 0; c < support.size(); ++c)
            y[static_cast<Eigen::Index>(c)] =
                data.point(idx)[support[c]] - shift[static_cast<Eigen::Index>(c)];
        Eigen::VectorXd w = v_block * y;
        const double q = w.squaredNorm();
        if (!(q > kQTol)) continue;
        SparseLinear probe{support, w / std::sqrt(q), shift};
        r = basic_multifilter(PolyProbe{std::move(probe)}, item, data, params);
        if (!is_yes(r)) return r;
    }
    return BasicYes{};
}

BasicOutcome quadratic_multifilter(const QuadContext& ctx, const WorkItem& item,
                                   const Dataset& data, const EstimationParams& params,
                                   uint64_t sub_seed) {
    const HarmonicQuadratic& a = ctx.a_matrix;
    const double frob = a.frobenius();
    // nuclear(AA') = ||A||_F^2 for symmetric A
    if (std::abs(frob * frob - 1.0) > 1e-9)
        throw std::invalid_argument("quadratic_multifilter: AA' nuclear norm budget violated");

    const int s = static_cast<int>(a.support.size());
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(s, s);
    for (const auto& cell : a.cells) {
        const int pi = static_cast<int>(std::lower_bound(a.support.begin(), a.support.end(),
                                                         cell.i) -
                                        a.support.begin());
        const int pj = static_cast<int>(std::lower_bound(a.support.begin(), a.support.end(),
                                                         cell.j) -
                                        a.support.begin());
        dense(pi, pj) = cell.value;
        dense(pj, pi) = cell.value;
    }

    Eigen::MatrixXd b1 = dense * dense;
    BasicOutcome r = degree2_homogeneous(b1, a.support, a.shift, item, data, params);
    if (!is_yes(r)) return r;

    // B2 = A (x) A is rank one with unit eigenvalue; its single eigencomponent is A.
    r = multilinear_multifilter(dense, a.support, a.shift, item, data, params, ctx.phi_size,
                                sub_seed);
    if (!is_yes(r)) return r;

    HarmonicQuadratic probe = a;
    probe.scale = 1.0 / ctx.beta;
    r = basic_multifilter(PolyProbe{std::move(probe)}, item, data, params);
    if (is_yes(r))
        return BasicNo{"quadratic concentration contradicts the large selected Frobenius norm"};
    return r;
}

} // namespace listdec
