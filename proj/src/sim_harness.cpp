#include "ggm/sim_harness.hpp"
#include "ggm/error.hpp"
#include "ggm/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace ggm {

RegionSpec region_spec(const RegionCell& cell, double alpha) {
    if (cell.region != 1 && cell.region != 2)
        throw Error(Errc::invalid_argument, "region must be 1 (I) or 2 (II)");
    if (cell.S == 1 && cell.exp == 1)
        return cell.region == 1 ? RegionSpec::rectangle(alpha) : RegionSpec::two_sided(alpha);
    return RegionSpec::sparse(cell.S, cell.exp, cell.region == 1 ? Tail::upper : Tail::two_sided, alpha);
}

std::string region_label(int region) { return region == 1 ? "I" : "II"; }

EdgeSet null_edge_set(Design design, Index p) {
    EdgeSet edges;
    switch (design) {
    case Design::random:
    case Design::approx:
        if (p < 3) throw Error(Errc::incompatible_p, "design needs p >= 3");
        for (Index k = 0; k < p - 1; ++k) edges.push_back(Edge::of(p - 1, k));
        break;
    case Design::cluster:
        if (p < 8 || p % 4 != 0)
            throw Error(Errc::incompatible_p, "cluster design needs p divisible by 4 (and p >= 8)");
        for (Index a = 0; a < p / 4; ++a)
            for (Index b = p / 4; b < p / 2; ++b) edges.push_back(Edge::of(a, b));
        break;
    case Design::independent:
        if (p < 3) throw Error(Errc::incompatible_p, "design needs p >= 3");
        for (Index a = 0; a < p; ++a)
            for (Index b = a + 1; b < p; ++b) edges.push_back(Edge::of(a, b));
        break;
    }
    return edges;
}

std::vector<CellKey> sim_cells(const SimConfig& cfg) {
    std::vector<CellKey> out;
    for (int K : cfg.folds)
        for (Solver s : cfg.solvers)
            for (const auto& [S, e] : cfg.sparsity)
                for (int region : cfg.regions) out.push_back({s, {region, S, e}, K});
    return out;
}

Replication sample_replication(const SimConfig& cfg, int rep) {
    const Rng rep_rng = Rng(cfg.base_seed).split(static_cast<std::uint64_t>(rep));
    Rng graph_rng = rep_rng.split(0);
    Rng data_rng = rep_rng.split(1);
    Replication out;
    out.edges = null_edge_set(cfg.design, cfg.p);
    out.model = make_model(cfg.design, cfg.p, cfg.design_params, graph_rng);
    for (const Edge& e : out.edges)
        if (std::abs(out.model.phi(e.j, e.k)) > 1e-10)
            throw Error(Errc::null_violated, "generated graph contains a tested edge");
    out.data = sample_mvn(out.model, cfg.n, data_rng);
    return out;
}

Rng unit_stream(const SimConfig& cfg, int rep, Solver solver, int K) {
    const std::uint64_t unit = 1000 + 100 * static_cast<std::uint64_t>(solver) + static_cast<std::uint64_t>(K);
    return Rng(cfg.base_seed).split(static_cast<std::uint64_t>(rep)).split(unit);
}

namespace {

void merge_into(Diagnostics& t, const Diagnostics& s) {
    t.lasso_fits += s.lasso_fits;
    t.nonconverged_fits += s.nonconverged_fits;
    t.kkt_checked += s.kkt_checked;
    t.kkt_failed += s.kkt_failed;
    t.kkt_worst = std::max(t.kkt_worst, s.kkt_worst);
    t.post_lasso_dropped += s.post_lasso_dropped;
    t.uneven_folds = t.uneven_folds || s.uneven_folds;
}

} // namespace

ReplicationOutcome run_replication(const SimConfig& cfg, int rep) {
    const Replication sample = sample_replication(cfg, rep);
    const std::vector<CellKey> cells = sim_cells(cfg);

    ReplicationOutcome out;
    out.accepted.assign(cells.size(), false);
    out.seconds.assign(cells.size(), 0.0);

    for (int K : cfg.folds) {
        for (Solver solver : cfg.solvers) {
            std::vector<RegionSpec> specs;
            std::vector<std::size_t> slots;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].K != K || cells[c].solver != solver) continue;
                specs.push_back(region_spec(cells[c].region, cfg.alpha));
                slots.push_back(c);
            }
            InferenceConfig icfg;
            icfg.solver = solver;
            icfg.penalty = cfg.penalty;
            icfg.lasso = cfg.lasso;
            icfg.bootstrap_B = cfg.bootstrap_B;
            icfg.center = cfg.center;
            icfg.audit_kkt = cfg.audit_kkt;
            const auto start = std::chrono::steady_clock::now();
            const TestReport report =
                cross_fit_inference(sample.data, sample.edges, K, icfg, specs, unit_stream(cfg, rep, solver, K));
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (std::size_t s = 0; s < slots.size(); ++s) {
                out.accepted[slots[s]] = !report.regions[s].reject;
                out.seconds[slots[s]] = secs;
            }
            merge_into(out.diagnostics, report.diagnostics);
        }
    }
    return out;
}

SimResult acceptance_table(const SimConfig& cfg) {
    if (cfg.replications < 1) throw Error(Errc::invalid_argument, "need at least one replication");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw Error(Errc::invalid_argument, "alpha must lie in (0,1)");
    if (cfg.n < 2 || cfg.p < 3 || cfg.bootstrap_B < 1)
        throw Error(Errc::invalid_argument, "n, p and B must be positive (n >= 2, p >= 3)");
    const std::vector<CellKey> cells = sim_cells(cfg);
    if (cells.empty()) throw Error(Errc::invalid_argument, "empty simulation grid");

    const auto start = std::chrono::steady_clock::now();
    std::vector<ReplicationOutcome> reps(static_cast<std::size_t>(cfg.replications));
    parallel_for(reps.size(), cfg.threads,
                 [&](std::size_t r) { reps[r] = run_replication(cfg, static_cast<int>(r)); });

    SimResult result;
    result.config = cfg;
    result.d = static_cast<Index>(null_edge_set(cfg.design, cfg.p).size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellResult cell;
        cell.key = cells[c];
        cell.replications = cfg.replications;
        for (const auto& r : reps) {
            cell.accepted += r.accepted[c] ? 1 : 0;
            cell.seconds += r.seconds[c];
        }
        cell.rate = static_cast<double>(cell.accepted) / cfg.replications;
        cell.se = std::sqrt(cell.rate * (1.0 - cell.rate) / cfg.replications);
        result.cells.push_back(cell);
    }
    for (const auto& r : reps) merge_into(result.diagnostics, r.diagnostics);
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

TableLayout table_layout(int table) {
    switch (table) {
    case 1: return {1, 1, 1};
    case 2: return {5, 1, 1};
    case 3: return {5, 2, 1};
    case 4: return {1, 1, 3};
    case 5: return {5, 1, 3};
    case 6: return {5, 2, 3};
    default: throw Error(Errc::invalid_argument, "tables are numbered 1 to 6");
    }
}

std::vector<std::pair<Design, Index>> table_rows() {
    return {{Design::random, 20},      {Design::random, 50},      {Design::random, 100},
            {Design::cluster, 20},     {Design::cluster, 40},     {Design::cluster, 60},
            {Design::approx, 20},      {Design::approx, 50},      {Design::approx, 100},
            {Design::independent, 5},  {Design::independent, 10}, {Design::independent, 20}};
}

} // namespace ggm
