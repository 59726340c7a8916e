#include "listdec/multifilter.hpp"

#include "listdec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace listdec {

namespace {

constexpr Eigen::Index kTile = 256;

struct CellCand {
    double value;
    int i;
    int j;
};

// Total order: larger magnitude first, ties toward lexicographically
// smaller (i, j). Makes the selected set independent of scan order.
bool cell_better(const CellCand& a, const CellCand& b) {
    double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

// Bounded buffer keeping the top-cap cells; top() is the worst kept.
class SelectionBuffer {
public:
    explicit SelectionBuffer(size_t cap) : cap_(cap) {}

    void offer(const CellCand& c) {
        if (cap_ == 0) return;
        if (heap_.size() < cap_) {
            heap_.push(c);
        } else if (cell_better(c, heap_.top())) {
            heap_.pop();
            heap_.push(c);
        }
    }

    std::vector<CellCand> drain() {
        std::vector<CellCand> out;
        out.reserve(heap_.size());
        while (!heap_.empty()) {
            out.push_back(heap_.top());
            heap_.pop();
        }
        return out;
    }

private:
    struct Cmp {
        bool operator()(const CellCand& a, const CellCand& b) const { return cell_better(a, b); }
    };
    size_t cap_;
    std::priority_queue<CellCand, std::vector<CellCand>, Cmp> heap_;
};

} // namespace

std::pair<MomentSummary, IndexSelection> moment_summary(const WorkItem& item, const Dataset& data,
                                                        int k) {
    const int64_t n = static_cast<int64_t>(item.subset.size());
    if (n < 2) throw std::invalid_argument("moment_summary: subset must have at least 2 points");
    const Eigen::Index d = data.d();

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int64_t idx : item.subset) mean += data.point(idx).transpose();
    mean /= static_cast<double>(n);

    RowMatrixXd centered(n, d);
    for (int64_t r = 0; r < n; ++r)
        centered.row(r) = data.point(item.subset[static_cast<size_t>(r)]) - mean.transpose();

    const size_t diag_cap = static_cast<size_t>(std::min<int64_t>(k, d));
    const size_t off_cap = static_cast<size_t>(
        std::min<int64_t>(static_cast<int64_t>(k) * (k - 1) / 2, d * (d - 1) / 2));
    SelectionBuffer diag_buf(diag_cap);
    SelectionBuffer off_buf(off_cap);

    const double inv_n = 1.0 / static_cast<double>(n);
    for (Eigen::Index bi = 0; bi < d; bi += kTile) {
        const Eigen::Index wi = std::min(kTile, d - bi);
        for (Eigen::Index bj = bi; bj < d; bj += kTile) {
            const Eigen::Index wj = std::min(kTile, d - bj);
            Eigen::MatrixXd block =
                centered.middleCols(bi, wi).transpose() * centered.middleCols(bj, wj) * inv_n;
            for (Eigen::Index ci = 0; ci < wi; ++ci) {
                const Eigen::Index gi = bi + ci;
                const Eigen::Index cj0 = (bi == bj) ? ci : 0;
                for (Eigen::Index cj = cj0; cj < wj; ++cj) {
                    const Eigen::Index gj = bj + cj;
                    const double v = block(ci, cj) - (gi == gj ? 1.0 : 0.0);
                    CellCand cand{v, static_cast<int>(gi), static_cast<int>(gj)};
                    if (gi == gj)
                        diag_buf.offer(cand);
                    else
                        off_buf.offer(cand);
                }
            }
        }
    }

    MomentSummary ms;
    ms.mean = std::move(mean);
    auto selected = diag_buf.drain();
    auto off = off_buf.drain();
    selected.insert(selected.end(), off.begin(), off.end());
    std::sort(selected.begin(), selected.end(), [](const CellCand& a, const CellCand& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    IndexSelection sel;
    double frob2 = 0.0;
    for (const auto& c : selected) {
        ms.top_entries.push_back({c.i, c.j, c.value});
        sel.u_set.emplace_back(c.i, c.j);
        frob2 += (c.i == c.j ? 1.0 : 2.0) * c.value * c.value;
        sel.omega.push_back(c.i);
        sel.omega.push_back(c.j);
    }
    ms.frob_selected = std::sqrt(frob2);
    std::sort(sel.omega.begin(), sel.omega.end());
    sel.omega.erase(std::unique(sel.omega.begin(), sel.omega.end()), sel.omega.end());
    return {std::move(ms), std::move(sel)};
}

std::pair<double, Eigen::VectorXd> leading_eig(const Eigen::MatrixXd& sym, double tol) {
    const Eigen::Index s = sym.rows();
    if (s < 1) throw std::invalid_argument("leading_eig: empty matrix");
    if (s == 1) return {sym(0, 0), Eigen::VectorXd::Ones(1)};

    const double shift = sym.cwiseAbs().rowwise().sum().maxCoeff();
    if (shift == 0.0) return {0.0, Eigen::VectorXd::Unit(s, 0)};
    Eigen::MatrixXd shifted = sym + shift * Eigen::MatrixXd::Identity(s, s);

    Eigen::VectorXd v(s);
    for (Eigen::Index i = 0; i < s; ++i)
        v[i] = uniform01(0xE16ULL, 0, static_cast<uint64_t>(i)) - 0.5;
    v.normalize();

    double rayleigh = v.dot(shifted * v);
    for (int iter = 0; iter < 10000; ++iter) {
        Eigen::VectorXd w = shifted * v;
        const double norm = w.norm();
        // w vanishes only when the shifted matrix is (numerically) zero, so
        // every vector is an eigenvector of the original at -shift.
        if (norm == 0.0) return {-shift, v};
        v = w / norm;
        const double next = v.dot(shifted * v);
        if (std::abs(next - rayleigh) <= tol * std::max(std::abs(next), 1.0))
            return {next - shift, v};
        rayleigh = next;
    }
    throw std::runtime_error("leading_eig: power iteration did not converge in 10000 iterations");
}

FilterOutcome attribute_efficient_multifilter(const WorkItem& item, const Dataset& data,
                                              const EstimationParams& params, double tau_call,
                                              uint64_t sub_seed, MultifilterDiag* diag) {
    const double alpha = item.alpha_prime;
    const double log_inv = std::log(1.0 / alpha);
    const double log_log = std::log(2.0 + log_inv);
    const double threshold = params.big_c() * log_inv * log_log * log_log;

    auto [ms, sel] = moment_summary(item, data, params.k());
    if (diag) {
        diag->frob_selected = ms.frob_selected;
        diag->threshold = threshold;
        diag->lambda_star = 0.0;
    }

    if (ms.frob_selected <= threshold) {
        if (diag) diag->branch = FilterBranch::kCandidate;
        return Candidate{hard_threshold(ms.mean, params.k())};
    }

    Eigen::VectorXd shift(sel.omega.size());
    for (size_t c = 0; c < sel.omega.size(); ++c)
        shift[static_cast<Eigen::Index>(c)] = ms.mean[sel.omega[c]];
    Eigen::MatrixXd restricted = restrict_centered(data, item.subset, sel.omega, shift);
    Eigen::MatrixXd block = restricted.transpose() * restricted /
                                static_cast<double>(item.subset.size()) -
                            Eigen::MatrixXd::Identity(restricted.cols(), restricted.cols());

    auto [lambda_star, v_star] = leading_eig(block);
    if (diag) diag->lambda_star = lambda_star;

    auto map_basic = [](BasicOutcome&& r, const char* context) -> FilterOutcome {
        if (auto* s1 = std::get_if<SplitOne>(&r)) return Split{{std::move(s1->item)}};
        if (auto* s2 = std::get_if<SplitTwo>(&r))
            return Split{{std::move(s2->first), std::move(s2->second)}};
        if (auto* no = std::get_if<BasicNo>(&r)) return Reject{std::move(no->diagnostic)};
        return Reject{std::string(context) + ": unexpected concentration certificate"};
    };

    if (lambda_star >= threshold) {
        if (diag) diag->branch = FilterBranch::kLinear;
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < v_star.size(); ++i)
            if (std::abs(v_star[i]) > std::abs(v_star[arg])) arg = i;
        if (v_star[arg] < 0.0) v_star = -v_star;
        SparseLinear probe{sel.omega, v_star, shift};
        return map_basic(basic_multifilter(PolyProbe{std::move(probe)}, item, data, params),
                         "linear branch");
    }

    if (diag) diag->branch = FilterBranch::kQuadratic;
    HarmonicQuadratic a;
    a.support = sel.omega;
    a.shift = shift;
    a.scale = 1.0;
    for (const auto& cell : ms.top_entries)
        a.cells.push_back({cell.i, cell.j, cell.value / ms.frob_selected});
    QuadContext ctx = QuadContext::compute(std::move(a), alpha, tau_call, params);
    return map_basic(quadratic_multifilter(ctx, item, data, params, sub_seed), "quadratic branch");
}

} // namespace listdec
