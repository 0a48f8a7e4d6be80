#include "ggm/edge_inference.hpp"
#include "ggm/error.hpp"
#include "ggm/sim_harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace ggm;

namespace {

Dataset gaussian_data(Index n, Index p, Rng& rng) {
    Dataset d;
    d.values.resize(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) d.values(i, j) = rng.normal();
    d.names = default_names(p);
    return d;
}

// Nuisances from full OLS: eta1 = X_{-m} part of X_j on X_{-j}, eta2 = X_k on X_{-m}.
NuisancePair ols_nuisance(const Dataset& data, Edge e, double* theta_ols) {
    const Index p = data.p();
    const std::vector<Index> minus_j = complement(p, {e.j});
    const std::vector<Index> rest = complement(p, {e.j, e.k});
    const Vector full = solve_ols(data.values.col(e.j), data.values(Eigen::all, minus_j));
    NuisancePair eta;
    eta.eta1.resize(p - 2);
    Index a = 0;
    for (std::size_t c = 0; c < minus_j.size(); ++c) {
        if (minus_j[c] == e.k) {
            *theta_ols = full(static_cast<Index>(c));
            continue;
        }
        eta.eta1(a++) = full(static_cast<Index>(c));
    }
    eta.eta2 = solve_ols(data.values.col(e.k), data.values(Eigen::all, rest));
    return eta;
}

double mean_score(const Dataset& d, Edge e, double theta, const NuisancePair& eta) {
    double s = 0.0;
    for (Index i = 0; i < d.n(); ++i) s += score(d.values.row(i), e, theta, eta);
    return s / static_cast<double>(d.n());
}

double soft(double z, double t) { return z > t ? z - t : (z < -t ? z + t : 0.0); }

InferenceConfig serial_config(Solver s = Solver::lasso, int B = 300) {
    InferenceConfig cfg;
    cfg.solver = s;
    cfg.bootstrap_B = B;
    return cfg;
}

} // namespace

TEST_SUITE("edge_inference") {

TEST_CASE("score examples") {
    Eigen::RowVectorXd x(4);
    x << 1.5, -2.0, 0.5, 3.0;
    const Edge e = Edge::of(3, 1);
    NuisancePair zero{Vector::Zero(2), Vector::Zero(2), 0.0};
    CHECK(score(x, e, 0.0, zero) == doctest::Approx(3.0 * -2.0));

    // X_k - eta2 X_{-m} = 0: remaining columns are (0, 2) with values (1.5, 0.5).
    NuisancePair kill{Vector::Zero(2), Vector(2), 0.0};
    kill.eta2 << -1.0, -1.0;
    CHECK(score(x, e, 0.7, kill) == 0.0);
    CHECK(score(x, e, -4.0, kill) == 0.0);

    const auto [a, b] = score_parts(x, e, zero);
    CHECK(a == doctest::Approx(-4.0));
    CHECK(b == doctest::Approx(-6.0));
    Rng rng(1);
    NuisancePair eta{Vector::Random(2), Vector::Random(2), 0.0};
    const auto [pa, pb] = score_parts(x, e, eta);
    CHECK(score(x, e, 0.3, eta) == doctest::Approx(pa * 0.3 + pb).epsilon(1e-14));
}

TEST_CASE("solve_theta on an exactly proportional pair") {
    Rng rng(2);
    Dataset d = gaussian_data(50, 3, rng);
    d.values.col(2) = -1.7 * d.values.col(0);
    const EdgeStat st = solve_theta(d, Edge::of(2, 0), NuisancePair{Vector::Zero(1), Vector::Zero(1), 0.0});
    CHECK(st.theta_hat == doctest::Approx(-1.7).epsilon(1e-12));
}

TEST_CASE("Frisch-Waugh equivalence with OLS nuisances") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Dataset d = gaussian_data(100, 5, rng);
        d.values.col(4) += 0.5 * d.values.col(0) - 0.3 * d.values.col(2);
        const Edge e = Edge::of(static_cast<Index>(1 + rng.below(4)), 0);
        double theta_ols = 0.0;
        const NuisancePair eta = ols_nuisance(d, e, &theta_ols);
        const EdgeStat st = solve_theta(d, e, eta);
        CHECK(std::abs(st.theta_hat - theta_ols) < 1e-8);
        CHECK(std::abs(mean_score(d, e, st.theta_hat, eta)) < 1e-10);
        CHECK(st.psi_std.squaredNorm() / 100.0 == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(st.psi_std.mean()) < 1e-8);
    }
}

TEST_CASE("degenerate Jacobian is reported") {
    Dataset d;
    d.values = Matrix::Ones(10, 3);
    d.values.col(0) = Vector::LinSpaced(10, 0, 1);
    d.values.col(1).setZero();
    try {
        solve_theta(d, Edge::of(2, 1), NuisancePair{Vector::Zero(1), Vector::Zero(1), 0.0});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::degenerate_jacobian);
    }
    Rng rng(4);
    Dataset data = gaussian_data(40, 4, rng);
    data.values.col(1).setConstant(2.0);
    try {
        test_edges(data, {Edge::of(3, 1)}, serial_config(), {RegionSpec::rectangle()}, Rng(1));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::degenerate_jacobian);
        CHECK(std::string(e.what()).find("(4,2)") != std::string::npos);
    }
}

TEST_CASE("population target on a two-node design plus an independent variable") {
    Matrix sigma = Matrix::Identity(3, 3);
    sigma(0, 1) = sigma(1, 0) = -0.6;
    PrecisionModel m;
    m.sigma = sigma;
    Rng rng(5);
    const Dataset d = sample_mvn(m, 20000, rng);
    const Edge e = Edge::of(1, 0);
    const NuisancePair eta = fit_nuisance(d, e, serial_config());
    const EdgeStat st = solve_theta(d, e, eta);
    // -phi_21 / phi_22 with phi = sigma^{-1}.
    CHECK(st.theta_hat == doctest::Approx(-0.6).epsilon(0.05));
}

TEST_CASE("p = 3 nuisances match a scalar soft-threshold oracle") {
    Rng rng(6);
    Dataset d = gaussian_data(200, 3, rng);
    d.values.col(0) += 0.8 * d.values.col(2);
    const Edge e = Edge::of(2, 1);
    InferenceConfig cfg = serial_config();
    const NuisancePair eta = fit_nuisance(d, e, cfg);

    const Vector y = d.values.col(1);
    const Vector x = d.values.col(0);
    const double n = 200.0;
    const double lambda = penalty_level(200, 3, 1, cfg.penalty);
    const double exx = x.squaredNorm() / n, exy = x.dot(y) / n;
    double load = x.cwiseAbs().maxCoeff() * std::sqrt(y.squaredNorm() / n);
    double b = soft(exy, lambda / n * load) / exx;
    for (int r = 0; r < cfg.penalty.m_iterations; ++r) {
        load = std::sqrt(((y - b * x).array().square() * x.array().square()).mean());
        b = soft(exy, lambda / n * load) / exx;
    }
    CHECK(eta.eta2(0) == doctest::Approx(b).epsilon(1e-9).scale(1.0));
}

TEST_CASE("post-lasso nuisances recover population coefficients at n = 2000") {
    Rng g(7);
    const PrecisionModel m = make_model(Design::random, 10, DesignParams{}, g);
    const Edge e = Edge::of(9, 0);
    const std::vector<Index> rest = complement(10, {e.j, e.k});
    const Vector target = m.sigma(rest, rest).ldlt().solve(m.sigma(rest, e.k));
    int good = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(800 + s);
        const Dataset d = sample_mvn(m, 2000, rng);
        const NuisancePair eta = fit_nuisance(d, e, serial_config(Solver::post_lasso));
        good += (eta.eta2 - target).cwiseAbs().maxCoeff() < 0.1 ? 1 : 0;
    }
    CHECK(good >= 18);
}

TEST_CASE("empirical quantile uses the ceil(qB)-th order statistic") {
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 1.0);
    std::reverse(v.begin(), v.end());
    CHECK(empirical_quantile(v, 0.95) == 95.0);
    CHECK(empirical_quantile(v, 0.951) == 96.0);
    CHECK(empirical_quantile(v, 0.025) == 3.0);
    CHECK(empirical_quantile(v, 1.0) == 100.0);
    CHECK(empirical_quantile(v, 1e-6) == 1.0);
    CHECK_THROWS_AS(empirical_quantile({}, 0.5), Error);
}

TEST_CASE("bootstrap critical values") {
    Rng rng(8);
    CHECK(bootstrap_sup(Matrix::Zero(50, 3), {0.05}, 200, rng).front() == 0.0);

    Vector z(400);
    for (Index i = 0; i < 400; ++i) z(i) = rng.normal();
    z /= std::sqrt(z.squaredNorm() / 400.0);
    Rng b1(9), b2(9);
    const double c = bootstrap_sup(z, {0.05}, 5000, b1).front();
    CHECK(std::abs(c - 1.96) < 0.1);
    CHECK(bootstrap_sup(z, {0.05}, 5000, b2).front() == c);
}

TEST_CASE("sparse transform with circular indices") {
    Vector t(3);
    t << 1.0, 10.0, 100.0;
    const Vector s = sparse_transform(t, 2, 1);
    CHECK(s(0) == 110.0); // t3 + t2
    CHECK(s(1) == 101.0); // t1 + t3
    CHECK(s(2) == 11.0);  // t2 + t1
    const Vector sq = sparse_transform(t, 1, 2);
    CHECK(sq(0) == 10000.0);
    CHECK(sparse_transform(t, 1, 1)(1) == 1.0);
}

TEST_CASE("region decisions") {
    Rng rng(10);
    const Dataset d = gaussian_data(150, 6, rng);
    const EdgeSet edges = null_edge_set(Design::random, 6);
    const TestReport rep = test_edges(d, edges, serial_config(),
                                      {RegionSpec::rectangle(), RegionSpec::two_sided(),
                                       RegionSpec::sparse(1, 1, Tail::upper), RegionSpec::sparse(3, 2, Tail::two_sided)},
                                      Rng(11));
    REQUIRE(rep.regions.size() == 4);
    CHECK(rep.regions[0].reject == rep.regions[2].reject);
    CHECK(rep.regions[0].criticals.upper == rep.regions[2].criticals.upper);
    CHECK(rep.regions[1].criticals.lower_half <= rep.regions[1].criticals.upper_half);

    std::vector<EdgeStat> stats;
    for (const EdgeResult& e : rep.edges) {
        EdgeStat s;
        s.edge = e.edge;
        s.theta_hat = e.theta_hat;
        s.sigma_hat = e.sigma_hat;
        stats.push_back(s);
    }
    CHECK_THROWS_AS(region_decide(stats, rep.n, RegionSpec::two_sided(), rep.regions[0].criticals), Error);
    try {
        region_decide(stats, rep.n, RegionSpec::sparse(3, 2, Tail::upper), rep.regions[2].criticals);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::spec_mismatch);
    }
}

TEST_CASE("rectangle rejects exactly when an interval excludes zero") {
    Rng rng(12);
    int rejects = 0;
    for (int t = 0; t < 60; ++t) {
        std::vector<EdgeStat> stats(5);
        for (Index r = 0; r < 5; ++r) {
            stats[static_cast<std::size_t>(r)].edge = Edge::of(r + 1, 0);
            stats[static_cast<std::size_t>(r)].theta_hat = 0.3 * rng.normal();
            stats[static_cast<std::size_t>(r)].sigma_hat = 0.5 + rng.uniform();
        }
        Criticals c;
        c.alpha = 0.05;
        c.upper = 2.0 + rng.uniform();
        const RegionDecision dec = region_decide(stats, 100, RegionSpec::rectangle(), c);
        bool excludes = false;
        for (const Interval& iv : dec.intervals) excludes = excludes || iv.lo > 0.0 || iv.hi < 0.0;
        CHECK(dec.reject == excludes);
        rejects += dec.reject ? 1 : 0;
    }
    CHECK(rejects > 0);
    CHECK(rejects < 60);
}

TEST_CASE("single-edge test under independence rejects at about the nominal rate") {
    int rejects = 0;
    double crit_sum = 0.0;
    const int reps = 200;
    for (int t = 0; t < reps; ++t) {
        Rng rng = Rng(13).split(static_cast<std::uint64_t>(t));
        const Dataset d = gaussian_data(200, 4, rng);
        const TestReport r = test_edges(d, {Edge::of(1, 0)}, serial_config(), {RegionSpec::rectangle()},
                                        Rng(14).split(static_cast<std::uint64_t>(t)));
        rejects += r.reject() ? 1 : 0;
        crit_sum += r.regions[0].criticals.upper;
    }
    CHECK(crit_sum / reps == doctest::Approx(1.96).epsilon(0.05));
    CHECK(rejects <= 25); // 5% of 200 is 10; 25 is beyond four binomial sd
}

TEST_CASE("reports are deterministic and independent of the thread count") {
    Rng rng(15);
    const Dataset d = gaussian_data(120, 8, rng);
    const EdgeSet edges = null_edge_set(Design::independent, 8);
    for (Solver s : {Solver::lasso, Solver::post_lasso, Solver::sqrt_lasso}) {
        InferenceConfig one = serial_config(s);
        InferenceConfig many = one;
        many.threads = 4;
        for (int K : {1, 3}) {
            const TestReport a = cross_fit_inference(d, edges, K, one, {RegionSpec::rectangle()}, Rng(16));
            const TestReport b = cross_fit_inference(d, edges, K, many, {RegionSpec::rectangle()}, Rng(16));
            CHECK(a.bootstrap_draws == b.bootstrap_draws);
            for (std::size_t r = 0; r < a.edges.size(); ++r) CHECK(a.edges[r].theta_hat == b.edges[r].theta_hat);
            CHECK(a.regions[0].criticals.upper == b.regions[0].criticals.upper);
        }
    }
}

TEST_CASE("one fold reproduces test_edges exactly") {
    Rng rng(17);
    const Dataset d = gaussian_data(90, 6, rng);
    const EdgeSet edges{Edge::of(5, 0), Edge::of(4, 2)};
    const TestReport a = test_edges(d, edges, serial_config(), {RegionSpec::two_sided()}, Rng(3));
    const TestReport b = cross_fit_inference(d, edges, 1, serial_config(), {RegionSpec::two_sided()}, Rng(3));
    for (std::size_t r = 0; r < edges.size(); ++r) {
        CHECK(a.edges[r].theta_hat == b.edges[r].theta_hat);
        CHECK(a.edges[r].sigma_hat == b.edges[r].sigma_hat);
    }
    CHECK(a.regions[0].statistic == b.regions[0].statistic);
}

TEST_CASE("cross-fit estimate is invariant to row order under a fixed partition") {
    Rng rng(18);
    const Dataset d = gaussian_data(90, 6, rng);
    Rng fr(19);
    const std::vector<int> folds = random_folds(90, 3, fr);
    std::vector<Index> perm(90);
    std::iota(perm.begin(), perm.end(), 0);
    Rng pr(20);
    for (Index i = 89; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[pr.below(static_cast<std::uint64_t>(i + 1))]);
    Dataset shuffled = d;
    std::vector<int> shuffled_folds(90);
    for (Index i = 0; i < 90; ++i) {
        shuffled.values.row(i) = d.values.row(perm[static_cast<std::size_t>(i)]);
        shuffled_folds[static_cast<std::size_t>(i)] = folds[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    const EdgeSet edges{Edge::of(5, 1)};
    const TestReport a = cross_fit_inference(d, edges, folds, 3, serial_config(), {RegionSpec::rectangle()}, Rng(1));
    const TestReport b =
        cross_fit_inference(shuffled, edges, shuffled_folds, 3, serial_config(), {RegionSpec::rectangle()}, Rng(1));
    CHECK(a.edges[0].theta_hat == doctest::Approx(b.edges[0].theta_hat).epsilon(1e-9));
    CHECK(a.edges[0].sigma_hat == doctest::Approx(b.edges[0].sigma_hat).epsilon(1e-9));
}

TEST_CASE("random folds: balanced sizes and a flag for uneven splits") {
    Rng rng(21);
    const std::vector<int> f = random_folds(100, 3, rng);
    std::vector<int> sizes(3, 0);
    for (int k : f) ++sizes[static_cast<std::size_t>(k)];
    CHECK(sizes == std::vector<int>{34, 33, 33});

    Rng data_rng(22);
    const Dataset d = gaussian_data(100, 5, data_rng);
    const TestReport r = cross_fit_inference(d, {Edge::of(4, 0)}, 3, serial_config(), {RegionSpec::rectangle()}, Rng(2));
    CHECK(r.diagnostics.uneven_folds);
    CHECK_FALSE(r.diagnostics.warnings.empty());
    try {
        cross_fit_inference(gaussian_data(5, 4, data_rng), {Edge::of(3, 0)}, 4, serial_config(),
                            {RegionSpec::rectangle()}, Rng(2));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::fold_too_small);
    }
}

TEST_CASE("input validation") {
    Rng rng(23);
    const Dataset d = gaussian_data(30, 4, rng);
    CHECK_THROWS_AS(test_edges(d, {Edge{4, 0}}, serial_config(), {RegionSpec::rectangle()}, Rng(1)), Error);
    CHECK_THROWS_AS(test_edges(d, {}, serial_config(), {RegionSpec::rectangle()}, Rng(1)), Error);
    CHECK_THROWS_AS(test_edges(d, {Edge::of(3, 0)}, serial_config(), {RegionSpec::sparse(2, 1, Tail::upper)}, Rng(1)),
                    Error);
    CHECK_THROWS_AS(test_edges(d, {Edge::of(3, 0)}, serial_config(), {RegionSpec::rectangle(1.5)}, Rng(1)), Error);
    CHECK(parse_solver("post-lasso") == Solver::post_lasso);
    CHECK(to_string(Solver::sqrt_lasso) == "sqrt-lasso");
}

}
