#include "doctest.h"
#include "helpers.hpp"

#include "listdec/datagen.hpp"
#include "listdec/multifilter.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace listdec;

namespace {

// Dense reference: full (Sigma - I), top-k diagonal and (k^2-k)/2 pair
// selection by direct sort. Only for small d.
struct DenseSelection {
    Eigen::MatrixXd discrepancy;
    std::vector<SparseCell> cells;
    double frob;
};

DenseSelection dense_selection_oracle(const WorkItem& item, const Dataset& data, int k) {
    const auto n = static_cast<double>(item.subset.size());
    const Eigen::Index d = data.d();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int64_t idx : item.subset) mean += data.point(idx).transpose();
    mean /= n;
    Eigen::MatrixXd disc = Eigen::MatrixXd::Zero(d, d);
    for (int64_t idx : item.subset) {
        Eigen::VectorXd y = data.point(idx).transpose() - mean;
        disc += y * y.transpose();
    }
    disc /= n;
    disc -= Eigen::MatrixXd::Identity(d, d);

    auto better = [&](const SparseCell& a, const SparseCell& b) {
        const double ma = std::abs(a.value), mb = std::abs(b.value);
        if (ma != mb) return ma > mb;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<SparseCell> diag, off;
    for (Eigen::Index i = 0; i < d; ++i) {
        diag.push_back({static_cast<int>(i), static_cast<int>(i), disc(i, i)});
        for (Eigen::Index j = i + 1; j < d; ++j)
            off.push_back({static_cast<int>(i), static_cast<int>(j), disc(i, j)});
    }
    std::sort(diag.begin(), diag.end(), better);
    std::sort(off.begin(), off.end(), better);
    diag.resize(std::min<size_t>(static_cast<size_t>(k), diag.size()));
    const auto off_cap = static_cast<size_t>(k * (k - 1) / 2);
    off.resize(std::min(off_cap, off.size()));

    DenseSelection out;
    out.discrepancy = disc;
    double frob2 = 0.0;
    for (const auto& c : diag) frob2 += c.value * c.value;
    for (const auto& c : off) frob2 += 2.0 * c.value * c.value;
    out.frob = std::sqrt(frob2);
    out.cells = diag;
    out.cells.insert(out.cells.end(), off.begin(), off.end());
    std::sort(out.cells.begin(), out.cells.end(), [](const SparseCell& a, const SparseCell& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return out;
}

} // namespace

TEST_SUITE("multifilter") {

TEST_CASE("two opposite points in one dimension give all-zero selection") {
    RowMatrixXd pts(2, 1);
    pts << 1.0, -1.0;
    Dataset data(std::move(pts));
    WorkItem item{{0, 1}, 0.5};
    auto [ms, sel] = moment_summary(item, data, 1);
    CHECK(ms.mean[0] == doctest::Approx(0.0));
    REQUIRE(ms.top_entries.size() == 1);
    CHECK(ms.top_entries[0].value == doctest::Approx(0.0)); // (1/2)(1+1) - 1
    CHECK(ms.frob_selected == doctest::Approx(0.0));
    CHECK(sel.omega == std::vector<int>{0});
}

TEST_CASE("moment summary needs two points") {
    RowMatrixXd pts(2, 2);
    pts << 1.0, 2.0, 3.0, 4.0;
    Dataset data(std::move(pts));
    CHECK_THROWS_AS(moment_summary(WorkItem{{0}, 0.5}, data, 1), std::invalid_argument);
}

TEST_CASE("clean covariance discrepancy concentrates") {
    int pass = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Dataset data = testutil::gaussian_dataset(10000, 50, Eigen::VectorXd::Zero(50), seed);
        WorkItem item{testutil::all_indices(10000), 0.25};
        auto [ms, sel] = moment_summary(item, data, 3);
        pass += ms.frob_selected <= 0.5;
    }
    CHECK(pass == 100);
}

TEST_CASE("selection matches the dense oracle and flags the planted pair") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        LabeledDataset labeled =
            generate(50, 3, 4000, 0.5, 0.0, PairCorrelation{3, 7, 0.9}, seed);
        // alpha = 0.5 means no outliers; plant the correlation in all rows
        // instead by regenerating with correlated colums on the inliers.
        RowMatrixXd pts = labeled.dataset.points();
        for (int64_t i = 0; i < pts.rows(); ++i)
            pts(i, 7) = 0.9 * pts(i, 3) + std::sqrt(1.0 - 0.81) * pts(i, 7);
        Dataset data(std::move(pts));
        WorkItem item{testutil::all_indices(4000), 0.25};
        auto [ms, sel] = moment_summary(item, data, 3);

        DenseSelection oracle = dense_selection_oracle(item, data, 3);
        REQUIRE(ms.top_entries.size() == oracle.cells.size());
        for (size_t i = 0; i < oracle.cells.size(); ++i) {
            CHECK(ms.top_entries[i].i == oracle.cells[i].i);
            CHECK(ms.top_entries[i].j == oracle.cells[i].j);
            CHECK(ms.top_entries[i].value ==
                  doctest::Approx(oracle.cells[i].value).epsilon(1e-9));
        }
        CHECK(ms.frob_selected == doctest::Approx(oracle.frob).epsilon(1e-9));

        bool found_pair = false;
        for (const auto& c : ms.top_entries)
            if (c.i == 3 && c.j == 7) found_pair = true;
        CHECK(found_pair);

        // Selected-value dominance within each class, against the dense matrix.
        double min_sel_diag = 1e300, min_sel_off = 1e300;
        for (const auto& c : ms.top_entries)
            (c.i == c.j ? min_sel_diag : min_sel_off) =
                std::min(c.i == c.j ? min_sel_diag : min_sel_off, std::abs(c.value));
        for (Eigen::Index i = 0; i < 50; ++i) {
            for (Eigen::Index j = i; j < 50; ++j) {
                bool selected = false;
                for (const auto& c : ms.top_entries)
                    if (c.i == i && c.j == j) selected = true;
                if (selected) continue;
                const double v = std::abs(oracle.discrepancy(i, j));
                CHECK(v <= (i == j ? min_sel_diag : min_sel_off) + 1e-12);
            }
        }
    }
}

TEST_CASE("selection counts follow k and the omega budget") {
    Dataset data = testutil::gaussian_dataset(500, 30, Eigen::VectorXd::Zero(30), 9);
    WorkItem item{testutil::all_indices(500), 0.25};
    for (int k : {1, 2, 4, 5}) {
        auto [ms, sel] = moment_summary(item, data, k);
        int64_t diag = 0, off = 0;
        for (const auto& c : ms.top_entries) (c.i == c.j ? diag : off) += 1;
        CHECK(diag == k);
        CHECK(off == k * (k - 1) / 2);
        CHECK(static_cast<int>(sel.omega.size()) <= 2 * k * k - k);
        CHECK(sel.u_set.size() == ms.top_entries.size());
    }
}

TEST_CASE("leading_eig on small exact cases") {
    Eigen::MatrixXd m1(2, 2);
    m1 << 3, 0, 0, 1;
    auto [l1, v1] = leading_eig(m1);
    CHECK(l1 == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(v1[0]) == doctest::Approx(1.0).epsilon(1e-6));

    Eigen::MatrixXd m2(2, 2);
    m2 << 0, 2, 2, 0;
    auto [l2, v2] = leading_eig(m2);
    CHECK(l2 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(v2[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(v2[0] * v2[1] > 0.0);

    auto [l3, v3] = leading_eig(Eigen::MatrixXd::Zero(3, 3));
    CHECK(l3 == 0.0);

    Eigen::MatrixXd neg = -Eigen::MatrixXd::Identity(2, 2);
    auto [l4, v4] = leading_eig(neg);
    CHECK(l4 == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("leading_eig matches the dense solver on random symmetric matrices") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        const int s = 20;
        Eigen::MatrixXd m(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j <= i; ++j) {
                const double v = 2.0 * uniform01(seed, 200, static_cast<uint64_t>(i * s + j)) -
                                 1.0;
                m(i, j) = v;
                m(j, i) = v;
            }
        auto [lambda, vec] = leading_eig(m, 1e-13);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
        const double expect = solver.eigenvalues()[s - 1];
        CHECK(lambda == doctest::Approx(expect).epsilon(1e-8));
        CHECK((m * vec - lambda * vec).norm() <= 1e-5);
    }
}

TEST_CASE("clean synthetic data yields an accurate candidate") {
    int good = 0;
    const uint64_t trials = 40;
    EstimationParams params(0.5, 0.05, 5, 100, 10.0);
    for (uint64_t seed = 0; seed < trials; ++seed) {
        LabeledDataset labeled = generate(100, 5, 5000, 0.5, 5.0, MirroredMean{}, seed);
        WorkItem item{testutil::all_indices(5000), 0.25};
        MultifilterDiag diag;
        FilterOutcome out = attribute_efficient_multifilter(item, labeled.dataset, params,
                                                            0.01, seed, &diag);
        REQUIRE(std::holds_alternative<Candidate>(out));
        CHECK(diag.branch == FilterBranch::kCandidate);
        const auto& cand = std::get<Candidate>(out);
        int nonzeros = 0;
        for (Eigen::Index i = 0; i < cand.mu_hat.size(); ++i)
            nonzeros += cand.mu_hat[i] != 0.0;
        CHECK(nonzeros <= 5);
        good += (cand.mu_hat - labeled.true_mean).norm() <= 0.5;
    }
    CHECK(good >= trials * 95 / 100);
}

TEST_CASE("rank-one covariance spike goes to the linear branch") {
    EstimationParams params(0.5, 0.05, 3, 60, 4.0);
    const int64_t n = 3000;
    RowMatrixXd pts(n, 60);
    Eigen::VectorXd spike = Eigen::VectorXd::Zero(60);
    spike[4] = 1.0 / std::sqrt(2.0);
    spike[11] = -1.0 / std::sqrt(2.0);
    for (int64_t i = 0; i < n; ++i) {
        for (int j = 0; j < 60; ++j)
            pts(i, j) = gaussian(3, static_cast<uint64_t>(i), static_cast<uint64_t>(j));
        const double load = 10.0 * gaussian(4, static_cast<uint64_t>(i), 0);
        pts.row(i) += load * spike.transpose();
    }
    Dataset data(std::move(pts));
    WorkItem item{testutil::all_indices(n), 0.25};
    MultifilterDiag diag;
    FilterOutcome out = attribute_efficient_multifilter(item, data, params, 0.01, 7, &diag);
    CHECK(diag.branch == FilterBranch::kLinear);
    CHECK(diag.lambda_star >= diag.threshold);
    CHECK(!std::holds_alternative<Candidate>(out));
}

TEST_CASE("spread discrepancy with no dominant direction goes quadratic") {
    // Many disjoint correlated pairs: each cell is c but the omega block is
    // block-diagonal with top eigenvalue about c, while the selected
    // Frobenius norm aggregates to c * k.
    EstimationParams params(0.5, 0.05, 5, 64, 1.0);
    const int64_t n = 20000;
    const double rho = 0.55;
    RowMatrixXd pts(n, 64);
    for (int64_t i = 0; i < n; ++i) {
        for (int j = 0; j < 64; ++j)
            pts(i, j) = gaussian(11, static_cast<uint64_t>(i), static_cast<uint64_t>(j));
        for (int p = 0; p < 16; ++p)
            pts(i, 2 * p + 1) = rho * pts(i, 2 * p) +
                                std::sqrt(1.0 - rho * rho) * pts(i, 2 * p + 1);
    }
    Dataset data(std::move(pts));
    WorkItem item{testutil::all_indices(n), 0.5};
    MultifilterDiag diag;
    FilterOutcome out = attribute_efficient_multifilter(item, data, params, 0.01, 13, &diag);
    (void)out;
    CHECK(diag.branch == FilterBranch::kQuadratic);
    CHECK(diag.frob_selected > diag.threshold);
    CHECK(diag.lambda_star < diag.threshold);
}

TEST_CASE("branch exclusivity over random corrupted runs") {
    EstimationParams params(0.25, 0.05, 3, 40, 4.0);
    for (uint64_t seed = 0; seed < 25; ++seed) {
        LabeledDataset labeled = generate(
            40, 3, 1500, 0.25, 6.0,
            seed % 2 ? CorruptionModel{MirroredMean{}}
                     : CorruptionModel{HypercubeNoise{7.0}},
            seed);
        WorkItem item{testutil::all_indices(1500), 0.125};
        MultifilterDiag diag;
        FilterOutcome out = attribute_efficient_multifilter(item, labeled.dataset, params,
                                                            0.01, seed, &diag);
        const bool is_candidate = std::holds_alternative<Candidate>(out);
        if (diag.branch == FilterBranch::kCandidate) {
            CHECK(is_candidate);
            CHECK(diag.frob_selected <= diag.threshold);
        } else {
            CHECK(!is_candidate);
            CHECK(diag.frob_selected > diag.threshold);
            if (diag.branch == FilterBranch::kLinear)
                CHECK(diag.lambda_star >= diag.threshold);
            else
                CHECK(diag.lambda_star < diag.threshold);
        }
    }
}

TEST_CASE("bound chain on dense spot checks") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const int d = 30, k = 3;
        LabeledDataset labeled = generate(d, k, 800, 0.25, 4.0, MirroredMean{}, seed);
        WorkItem item{testutil::all_indices(800), 0.25};
        auto [ms, sel] = moment_summary(item, labeled.dataset, k);
        DenseSelection oracle = dense_selection_oracle(item, labeled.dataset, k);

        // lambda* of the omega block is bounded by its Frobenius norm.
        Eigen::MatrixXd block(sel.omega.size(), sel.omega.size());
        for (size_t a = 0; a < sel.omega.size(); ++a)
            for (size_t b = 0; b < sel.omega.size(); ++b)
                block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    oracle.discrepancy(sel.omega[a], sel.omega[b]);
        auto [lambda, vec] = leading_eig(block);
        CHECK(lambda <= block.norm() + 1e-9);

        // Any k-subset of omega has spectral norm at most the selected
        // Frobenius norm.
        for (uint64_t rep = 0; rep < 20; ++rep) {
            std::vector<int> subset;
            for (int take = 0; take < k; ++take) {
                const auto pos = static_cast<size_t>(
                    hash_counter(seed, 300 + rep, static_cast<uint64_t>(take)) %
                    sel.omega.size());
                subset.push_back(sel.omega[pos]);
            }
            std::sort(subset.begin(), subset.end());
            subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
            Eigen::MatrixXd sub(subset.size(), subset.size());
            for (size_t a = 0; a < subset.size(); ++a)
                for (size_t b = 0; b < subset.size(); ++b)
                    sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                        oracle.discrepancy(subset[a], subset[b]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub);
            const double spectral = solver.eigenvalues().cwiseAbs().maxCoeff();
            CHECK(spectral <= ms.frob_selected + 1e-9);
        }
    }
}

TEST_CASE("quadratic-branch probe is harmonic: no degree-0 or degree-1 part") {
    auto rule = testutil::gauss_hermite(10);
    for (uint64_t seed = (0); seed < 10; ++seed) {
        std::vector<int> support = {0, 1, 2};
        HarmonicQuadratic h = testutil::random_harmonic(support, seed + 77, 1.0);
        h.shift = testutil::random_vector(3, seed, 400, 1.5);
        PolyProbe probe{h};

        // Tensorized quadrature over the support, centered at the shift:
        // the probe must integrate to zero against 1 and against each y_i.
        double mass = 0.0;
        Eigen::VectorXd first = Eigen::VectorXd::Zero(3);
        for (size_t q0 = 0; q0 < rule.nodes.size(); ++q0)
            for (size_t q1 = 0; q1 < rule.nodes.size(); ++q1)
                for (size_t q2 = 0; q2 < rule.nodes.size(); ++q2) {
                    const double w = rule.weights[q0] * rule.weights[q1] * rule.weights[q2];
                    Eigen::RowVectorXd x(3);
                    x << h.shift[0] + rule.nodes[q0], h.shift[1] + rule.nodes[q1],
                        h.shift[2] + rule.nodes[q2];
                    const double v = eval_probe(probe, x);
                    mass += w * v;
                    first[0] += w * v * rule.nodes[q0];
                    first[1] += w * v * rule.nodes[q1];
                    first[2] += w * v * rule.nodes[q2];
                }
        CHECK(std::abs(mass) <= 1e-9);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(first[i]) <= 1e-9);
    }
}

TEST_CASE("candidate accuracy stays within the frozen constant") {
    const double c_test = 1.0;
    for (double alpha : {0.5, 0.25}) {
        EstimationParams params(alpha, 0.05, 5, 100, 4.0);
        const double bound = c_test * std::sqrt(std::log(1.0 / alpha) / alpha) *
                             std::log(2.0 + std::log(1.0 / alpha));
        for (uint64_t seed = 0; seed < 10; ++seed) {
            LabeledDataset labeled = generate(100, 5, 4000, 0.5, 5.0, MirroredMean{}, seed);
            WorkItem item{testutil::all_indices(4000), alpha};
            FilterOutcome out = attribute_efficient_multifilter(item, labeled.dataset, params,
                                                                0.01, seed, nullptr);
            REQUIRE(std::holds_alternative<Candidate>(out));
            CHECK((std::get<Candidate>(out).mu_hat - labeled.true_mean).norm() <= bound);
        }
    }
}

} // TEST_SUITE
