// ggmtest: simultaneous tests for absent edges in Gaussian graphical models.
//
//   ggmtest test      --data X.csv --edges "p:1,p:2" [options]  -> JSON report
//   ggmtest generate  --design cluster --p 40 --n 200 --seed 1  -> CSV + model JSON
//   ggmtest simulate  --design independent --p 5 --l 200        -> acceptance-rate CSV + JSON
//
// Exit codes of `test`: 0 accept H0, 3 reject H0, 1 input error, 2 numerical failure.

#include "ggm/error.hpp"
#include "ggm/parallel.hpp"
#include "ggm/report_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_accept = 0;
constexpr int exit_input = 1;
constexpr int exit_numeric = 2;
constexpr int exit_reject = 3;

struct TestArgs {
    std::string data;
    std::string edges;
    double alpha = 0.05;
    std::string solver = "lasso";
    std::string region = "rect";
    std::string sparse_tail = "upper";
    int S = 1;
    int exp = 1;
    int folds = 1;
    std::uint64_t seed = 1;
    int B = 500;
    double c_lambda = 1.1;
    double gamma = -1.0;
    int loading_iters = 2;
    bool no_center = false;
    std::string out;
};

struct GenerateArgs {
    std::string design;
    ggm::Index p = 0;
    ggm::Index n = 200;
    std::uint64_t seed = 1;
    std::string out;
    ggm::DesignParams params;
};

struct SimulateArgs {
    std::string design;
    ggm::Index p = 0;
    int table = 0;
    ggm::Index n = 200;
    int l = 200;
    int B = 300;
    bool full = false;
    std::uint64_t seed = 42;
    double alpha = 0.05;
    std::vector<std::string> solvers;
    std::vector<std::string> regions;
    int S = 0;
    int exp = 0;
    std::vector<int> folds;
    int threads = 0;
    std::string out;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ggm::Error(ggm::Errc::invalid_argument, "cannot write '" + path + "'");
    f << text;
}

std::string read_edges_arg(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream f(arg);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    return arg;
}

ggm::RegionSpec test_region(const TestArgs& a) {
    if (a.region == "rect" || a.region == "rectangle" || a.region == "I")
        return ggm::RegionSpec::rectangle(a.alpha);
    if (a.region == "two-sided" || a.region == "two_sided" || a.region == "II")
        return ggm::RegionSpec::two_sided(a.alpha);
    if (a.region == "sparse") {
        const ggm::Tail tail = a.sparse_tail == "two-sided" || a.sparse_tail == "two_sided"
                                   ? ggm::Tail::two_sided
                                   : ggm::Tail::upper;
        return ggm::RegionSpec::sparse(a.S, a.exp, tail, a.alpha);
    }
    throw ggm::Error(ggm::Errc::invalid_argument, "unknown region '" + a.region + "'");
}

int run_test(const TestArgs& a) {
    const ggm::Dataset data = ggm::read_csv_file(a.data);
    if (data.n() < 2) throw ggm::Error(ggm::Errc::parse_error, "data has fewer than 2 rows");
    const ggm::EdgeSet edges = ggm::parse_edges(read_edges_arg(a.edges), data.names);

    ggm::InferenceConfig cfg;
    cfg.solver = ggm::parse_solver(a.solver);
    cfg.bootstrap_B = a.B;
    cfg.center = !a.no_center;
    cfg.penalty.c_lambda = a.c_lambda;
    if (a.gamma > 0.0) cfg.penalty.gamma = a.gamma;
    cfg.penalty.m_iterations = a.loading_iters;
    cfg.threads = ggm::default_threads();

    const ggm::TestReport report =
        ggm::cross_fit_inference(data, edges, a.folds, cfg, {test_region(a)}, ggm::Rng(a.seed));
    const std::string text = ggm::to_json(report, data.names).dump(2) + "\n";
    if (a.out.empty())
        std::cout << text;
    else
        write_text(a.out, text);
    return report.reject() ? exit_reject : exit_accept;
}

int run_generate(const GenerateArgs& a) {
    const ggm::Design design = ggm::parse_design(a.design);
    ggm::Rng rng(a.seed);
    ggm::Rng graph_rng = rng.split(0);
    ggm::Rng data_rng = rng.split(1);
    const ggm::PrecisionModel model = ggm::make_model(design, a.p, a.params, graph_rng);
    const ggm::Dataset data = ggm::sample_mvn(model, a.n, data_rng);

    const std::string prefix =
        a.out.empty() ? "ggm_" + a.design + "_p" + std::to_string(a.p) : a.out;
    std::ostringstream csv;
    ggm::write_csv(csv, data);
    write_text(prefix + ".csv", csv.str());
    write_text(prefix + ".json",
               ggm::to_json(model, design, a.p, a.n, a.seed, a.params).dump(2) + "\n");
    std::cerr << "wrote " << prefix << ".csv and " << prefix << ".json\n";
    return 0;
}

int run_simulate(const SimulateArgs& a) {
    std::vector<std::pair<ggm::Design, ggm::Index>> rows;
    ggm::TableLayout layout;
    if (a.table != 0) {
        layout = ggm::table_layout(a.table);
        rows = ggm::table_rows();
        if (!a.design.empty()) {
            const ggm::Design only = ggm::parse_design(a.design);
            std::erase_if(rows, [&](const auto& r) { return r.first != only; });
        }
        if (a.p > 0) std::erase_if(rows, [&](const auto& r) { return r.second != a.p; });
    } else if (!a.design.empty() && a.p > 0) {
        rows.emplace_back(ggm::parse_design(a.design), a.p);
    }

    ggm::SimConfig base;
    base.n = a.n;
    base.replications = a.l;
    base.bootstrap_B = a.B;
    if (a.full) base.use_full_scale();
    base.alpha = a.alpha;
    base.base_seed = a.seed;
    base.threads = a.threads > 0 ? a.threads : ggm::default_threads();

    base.solvers.clear();
    if (a.solvers.empty()) {
        base.solvers = {ggm::Solver::lasso, ggm::Solver::post_lasso};
        if (a.table != 0) base.solvers.push_back(ggm::Solver::sqrt_lasso);
    }
    for (const auto& s : a.solvers) base.solvers.push_back(ggm::parse_solver(s));
    base.regions.clear();
    if (a.regions.empty()) base.regions = {1, 2};
    for (const auto& r : a.regions) {
        if (r == "I" || r == "1") base.regions.push_back(1);
        else if (r == "II" || r == "2") base.regions.push_back(2);
        else throw ggm::Error(ggm::Errc::invalid_argument, "region must be I or II");
    }
    base.sparsity = {{a.S > 0 ? a.S : layout.S, a.exp > 0 ? a.exp : layout.exp}};
    base.folds = a.folds.empty() ? std::vector<int>{layout.K} : a.folds;

    if (rows.empty() || base.solvers.empty() || base.regions.empty())
        throw ggm::Error(ggm::Errc::invalid_argument,
                         "empty simulation grid: give --design and --p, or --table N");

    std::ostringstream csv;
    ggm::write_sim_csv_header(csv);
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& [design, p] : rows) {
        ggm::SimConfig cfg = base;
        cfg.design = design;
        cfg.p = p;
        const ggm::SimResult result = ggm::acceptance_table(cfg);
        ggm::write_sim_csv_rows(csv, result);
        summary.push_back(ggm::to_json(result));
        std::cerr << ggm::to_string(design) << " p=" << p << " done in " << result.wall_seconds
                  << " s\n";
    }
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(a.out + ".csv", csv.str());
        write_text(a.out + ".json", summary.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous tests for absent edges in Gaussian graphical models", "ggmtest"};
    app.require_subcommand(1);

    TestArgs targs;
    auto* test = app.add_subcommand("test", "Test H0: none of the listed edges is in the graph");
    test->add_option("--data", targs.data, "CSV with a header row of column names")->required();
    test->add_option("--edges", targs.edges, "Edge list 'a:b,...' (names, 1-based indices or p) or a file")
        ->required();
    test->add_option("--alpha", targs.alpha, "Level of the test")->check(CLI::Range(1e-6, 0.999999));
    test->add_option("--solver", targs.solver, "lasso | post-lasso | sqrt-lasso");
    test->add_option("--region", targs.region, "rect | two-sided | sparse");
    test->add_option("--sparse-tail", targs.sparse_tail, "upper | two-sided (sparse region only)");
    test->add_option("--S", targs.S, "Window of the sparse region")->check(CLI::PositiveNumber);
    test->add_option("--exp", targs.exp, "Exponent of the sparse region (1 or 2)")->check(CLI::Range(1, 2));
    test->add_option("--folds", targs.folds, "Cross-fitting folds (1 = no cross-fitting)")
        ->check(CLI::PositiveNumber);
    test->add_option("--seed", targs.seed, "Seed of the bootstrap and fold streams");
    test->add_option("--B", targs.B, "Bootstrap draws")->check(CLI::PositiveNumber);
    test->add_option("--c-lambda", targs.c_lambda, "Penalty constant c_lambda > 1");
    test->add_option("--gamma", targs.gamma, "Penalty tail probability (default 0.1/log n)");
    test->add_option("--loading-iters", targs.loading_iters, "Penalty loading refinements")
        ->check(CLI::NonNegativeNumber);
    test->add_flag("--no-center", targs.no_center, "Do not center the columns");
    test->add_option("--out", targs.out, "Report path (default stdout)");

    GenerateArgs gargs;
    auto* gen = app.add_subcommand("generate", "Sample a synthetic design");
    gen->add_option("--design", gargs.design, "random | cluster | approx | independent")->required();
    gen->add_option("--p", gargs.p, "Number of variables")->required()->check(CLI::PositiveNumber);
    gen->add_option("--n", gargs.n, "Number of observations")->check(CLI::Range(2, 100000000));
    gen->add_option("--seed", gargs.seed, "Seed");
    gen->add_option("--out", gargs.out, "Output prefix (writes PREFIX.csv and PREFIX.json)");
    gen->add_option("--prob", gargs.params.prob, "Edge probability (default 5/p)");
    gen->add_option("--groups", gargs.params.groups, "Cluster count")->check(CLI::PositiveNumber);
    gen->add_option("--a", gargs.params.a, "Noise half-width of the approx design");
    gen->add_option("--v", gargs.params.v, "Edge weight v");
    gen->add_option("--u", gargs.params.u, "Diagonal offset u");

    SimulateArgs sargs;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo acceptance rates under H0");
    sim->add_option("--design", sargs.design, "random | cluster | approx | independent");
    sim->add_option("--p", sargs.p, "Number of variables")->check(CLI::PositiveNumber);
    sim->add_option("--table", sargs.table, "Reproduce result table 1-6")->check(CLI::Range(1, 6));
    sim->add_option("--n", sargs.n, "Observations per replication")->check(CLI::Range(2, 100000000));
    sim->add_option("--l", sargs.l, "Replications")->check(CLI::PositiveNumber);
    sim->add_option("--B", sargs.B, "Bootstrap draws")->check(CLI::PositiveNumber);
    sim->add_flag("--full", sargs.full, "Use l = 1000 and B = 500");
    sim->add_option("--seed", sargs.seed, "Base seed");
    sim->add_option("--alpha", sargs.alpha, "Level")->check(CLI::Range(1e-6, 0.999999));
    sim->add_option("--solver", sargs.solvers, "Solvers (repeatable)")->delimiter(',');
    sim->add_option("--region", sargs.regions, "Regions I and/or II")->delimiter(',');
    sim->add_option("--S", sargs.S, "Sparse window")->check(CLI::PositiveNumber);
    sim->add_option("--exp", sargs.exp, "Sparse exponent")->check(CLI::Range(1, 2));
    sim->add_option("--folds", sargs.folds, "Cross-fitting folds (repeatable)")->delimiter(',');
    sim->add_option("--threads", sargs.threads, "Worker threads (default GGM_THREADS or all cores)");
    sim->add_option("--out", sargs.out, "Output prefix (default: CSV to stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (*test) return run_test(targs);
        if (*gen) return run_generate(gargs);
        if (*sim) return run_simulate(sargs);
    } catch (const ggm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ggm::is_numerical(e.code()) ? exit_numeric : exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
    return exit_input;
}
