#pragma once

#include "ggm/edge_inference.hpp"
#include "ggm/graph_gen.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ggm {

/// Confidence region I (upper tail) or II (equal-tailed) combined with the
/// (S, exp) sparse transform; S = 1, exp = 1 is the plain sup statistic.
struct RegionCell {
    int region = 1;
    int S = 1;
    int exp = 1;
};

RegionSpec region_spec(const RegionCell& cell, double alpha);

struct SimConfig {
    Design design = Design::random;
    Index p = 20;
    Index n = 200;
    int replications = 200;
    double alpha = 0.05;
    int bootstrap_B = 300;
    std::vector<Solver> solvers = {Solver::lasso, Solver::post_lasso};
    std::vector<int> regions = {1, 2};
    std::vector<std::pair<int, int>> sparsity = {{1, 1}}; ///< (S, exp) pairs
    std::vector<int> folds = {1};
    std::uint64_t base_seed = 42;
    DesignParams design_params;
    PenaltyConfig penalty;
    LassoOptions lasso;
    bool center = true;
    bool audit_kkt = false;
    int threads = 1;

    /// Paper-scale replication count and bootstrap size.
    void use_full_scale() {
        replications = 1000;
        bootstrap_B = 500;
    }
};

struct CellKey {
    Solver solver = Solver::lasso;
    RegionCell region;
    int K = 1;
};

struct CellResult {
    CellKey key;
    long accepted = 0;
    int replications = 0;
    double rate = 0.0;
    double se = 0.0;
    double seconds = 0.0;
};

struct SimResult {
    SimConfig config;
    Index d = 0;
    std::vector<CellResult> cells;
    Diagnostics diagnostics;
    double wall_seconds = 0.0;
};

/// Null edge sets: last node against all others (random, approx), first
/// quarter against second quarter (cluster), all pairs (independent).
/// Throws Errc::incompatible_p when p does not fit the design.
EdgeSet null_edge_set(Design design, Index p);

/// Cells evaluated by one replication, in reporting order.
std::vector<CellKey> sim_cells(const SimConfig& cfg);

struct Replication {
    PrecisionModel model;
    Dataset data;
    EdgeSet edges;
};

/// Model and data of replication `rep`; throws Errc::null_violated if a
/// tested pair is an edge of the generated graph.
Replication sample_replication(const SimConfig& cfg, int rep);

/// Stream for the (solver, K) inference unit of a replication.
Rng unit_stream(const SimConfig& cfg, int rep, Solver solver, int K);

struct ReplicationOutcome {
    std::vector<bool> accepted; ///< aligned with sim_cells(cfg)
    std::vector<double> seconds;
    Diagnostics diagnostics;
};

ReplicationOutcome run_replication(const SimConfig& cfg, int rep);

/// Runs all replications on a worker pool and reduces them in index order.
SimResult acceptance_table(const SimConfig& cfg);

/// (S, exp, K) for result tables 1-6.
struct TableLayout {
    int S = 1;
    int exp = 1;
    int K = 1;
};
TableLayout table_layout(int table);

/// (design, p) rows of every result table.
std::vector<std::pair<Design, Index>> table_rows();

std::string region_label(int region);

} // namespace ggm
