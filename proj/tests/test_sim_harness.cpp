#include "ggm/error.hpp"
#include "ggm/sim_harness.hpp"

#include <doctest.h>

using namespace ggm;

namespace {

SimConfig small_config(Design d, Index p) {
    SimConfig cfg;
    cfg.design = d;
    cfg.p = p;
    cfg.n = 100;
    cfg.replications = 12;
    cfg.bootstrap_B = 100;
    cfg.threads = 1;
    return cfg;
}

} // namespace

TEST_SUITE("sim_harness") {

TEST_CASE("null edge sets") {
    const EdgeSet r = null_edge_set(Design::random, 20);
    CHECK(r.size() == 19);
    CHECK(r.front() == Edge{19, 0});
    CHECK(r.back() == Edge{19, 18});
    CHECK(null_edge_set(Design::approx, 50).size() == 49);

    const EdgeSet c = null_edge_set(Design::cluster, 40);
    CHECK(c.size() == 100);
    CHECK(c.front() == Edge{10, 0});
    CHECK(c.back() == Edge{19, 9});

    const EdgeSet i = null_edge_set(Design::independent, 5);
    CHECK(i.size() == 10);
    for (const Edge& e : i) CHECK(e.j > e.k);

    try {
        null_edge_set(Design::cluster, 30);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::incompatible_p);
    }
}

TEST_CASE("every design satisfies its null hypothesis") {
    for (auto [d, p] : table_rows()) {
        SimConfig cfg = small_config(d, p);
        for (int rep = 0; rep < 5; ++rep) {
            const Replication r = sample_replication(cfg, rep);
            for (const Edge& e : r.edges) REQUIRE(r.model.phi(e.j, e.k) == 0.0);
            CHECK(r.data.n() == cfg.n);
        }
    }
}

TEST_CASE("region cells map to region specs") {
    CHECK(region_spec({1, 1, 1}, 0.05).kind == RegionKind::rectangle);
    CHECK(region_spec({2, 1, 1}, 0.05).kind == RegionKind::two_sided_sup);
    const RegionSpec s = region_spec({2, 5, 2}, 0.05);
    CHECK(s.kind == RegionKind::s_sparse);
    CHECK(s.tail == Tail::two_sided);
    CHECK(region_spec({1, 5, 1}, 0.05).tail == Tail::upper);
    CHECK_THROWS_AS(region_spec({3, 1, 1}, 0.05), Error);
    CHECK(table_layout(5).S == 5);
    CHECK(table_layout(5).K == 3);
    CHECK(table_layout(3).exp == 2);
}

TEST_CASE("cells are ordered by folds, solver, sparsity, region") {
    SimConfig cfg = small_config(Design::random, 10);
    cfg.folds = {1, 3};
    const auto cells = sim_cells(cfg);
    REQUIRE(cells.size() == 8);
    CHECK(cells[0].K == 1);
    CHECK(cells[0].solver == Solver::lasso);
    CHECK(cells[0].region.region == 1);
    CHECK(cells[1].region.region == 2);
    CHECK(cells[2].solver == Solver::post_lasso);
    CHECK(cells[4].K == 3);
}

TEST_CASE("replications are reproducible") {
    const SimConfig cfg = small_config(Design::cluster, 20);
    const ReplicationOutcome a = run_replication(cfg, 3);
    const ReplicationOutcome b = run_replication(cfg, 3);
    CHECK(a.accepted == b.accepted);
}

TEST_CASE("parallel and serial tables agree exactly") {
    SimConfig cfg = small_config(Design::random, 12);
    cfg.folds = {1, 3};
    const SimResult serial = acceptance_table(cfg);
    cfg.threads = 4;
    const SimResult parallel = acceptance_table(cfg);
    REQUIRE(serial.cells.size() == parallel.cells.size());
    for (std::size_t c = 0; c < serial.cells.size(); ++c) {
        CHECK(serial.cells[c].accepted == parallel.cells[c].accepted);
        CHECK(serial.cells[c].rate == parallel.cells[c].rate);
    }
    CHECK(serial.d == 11);
}

TEST_CASE("rates and standard errors") {
    const SimResult r = acceptance_table(small_config(Design::independent, 5));
    for (const CellResult& c : r.cells) {
        CHECK(c.rate == static_cast<double>(c.accepted) / c.replications);
        CHECK(c.se == doctest::Approx(std::sqrt(c.rate * (1 - c.rate) / c.replications)));
    }
}

TEST_CASE("adding cells leaves existing cells unchanged") {
    SimConfig cfg = small_config(Design::approx, 10);
    cfg.solvers = {Solver::lasso};
    const SimResult a = acceptance_table(cfg);
    cfg.solvers = {Solver::lasso, Solver::sqrt_lasso};
    cfg.sparsity = {{1, 1}, {3, 2}};
    const SimResult b = acceptance_table(cfg);
    for (const CellResult& ca : a.cells)
        for (const CellResult& cb : b.cells)
            if (cb.key.solver == ca.key.solver && cb.key.region.region == ca.key.region.region &&
                cb.key.region.S == 1 && cb.key.K == ca.key.K)
                CHECK(cb.accepted == ca.accepted);
}

TEST_CASE("configuration errors") {
    SimConfig cfg = small_config(Design::random, 10);
    cfg.replications = 0;
    CHECK_THROWS_AS(acceptance_table(cfg), Error);
    cfg = small_config(Design::random, 10);
    cfg.solvers.clear();
    CHECK_THROWS_AS(acceptance_table(cfg), Error);
    cfg = small_config(Design::random, 10);
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(acceptance_table(cfg), Error);
}

}
