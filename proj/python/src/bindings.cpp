#include "ggm/error.hpp"
#include "ggm/parallel.hpp"
#include "ggm/report_io.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using EdgeList = std::vector<std::pair<ggm::Index, ggm::Index>>;

ggm::EdgeSet to_edges(const EdgeList& pairs) {
    ggm::EdgeSet out;
    for (const auto& [a, b] : pairs) out.push_back(ggm::Edge::of(a, b));
    return out;
}

EdgeList from_edges(const ggm::EdgeSet& edges) {
    EdgeList out;
    for (const ggm::Edge& e : edges) out.emplace_back(e.j, e.k);
    return out;
}

ggm::RegionSpec make_region(const std::string& region, int S, int exp, const std::string& tail,
                            double alpha) {
    if (region == "rect" || region == "rectangle") return ggm::RegionSpec::rectangle(alpha);
    if (region == "two-sided" || region == "two_sided") return ggm::RegionSpec::two_sided(alpha);
    if (region == "sparse")
        return ggm::RegionSpec::sparse(S, exp, tail == "upper" ? ggm::Tail::upper : ggm::Tail::two_sided,
                                       alpha);
    throw ggm::Error(ggm::Errc::invalid_argument, "unknown region '" + region + "'");
}

py::dict fit_dict(const ggm::LassoFit& fit) {
    py::dict d;
    d["coefficients"] = fit.coefficients;
    d["support"] = fit.support;
    d["lambda"] = fit.lambda;
    d["loadings"] = fit.loadings;
    d["iterations"] = fit.iterations_used;
    d["converged"] = fit.converged;
    d["kkt_residual"] = fit.kkt_residual;
    return d;
}

py::dict model_dict(const ggm::PrecisionModel& m) {
    py::dict d;
    d["adjacency"] = m.adjacency.entries;
    d["phi"] = m.phi;
    d["sigma"] = m.sigma;
    d["true_edges"] = from_edges(m.true_edges);
    return d;
}

py::dict report_dict(const ggm::TestReport& r) {
    py::list edges;
    for (const ggm::EdgeResult& e : r.edges) {
        py::dict d;
        d["edge"] = py::make_tuple(e.edge.j, e.edge.k);
        d["theta"] = e.theta_hat;
        d["sigma"] = e.sigma_hat;
        d["jacobian"] = e.jacobian_hat;
        d["t"] = e.t_stat;
        d["ci"] = py::make_tuple(e.interval.lo, e.interval.hi);
        edges.append(d);
    }
    py::list regions;
    for (const ggm::RegionOutcome& o : r.regions) {
        py::dict d;
        d["kind"] = std::string(ggm::to_string(o.spec.kind));
        d["statistic"] = o.statistic;
        d["critical"] = py::make_tuple(o.criticals.upper, o.criticals.lower_half, o.criticals.upper_half);
        d["reject"] = o.reject;
        regions.append(d);
    }
    py::dict out;
    out["n"] = r.n;
    out["p"] = r.p;
    out["folds"] = r.folds;
    out["lambda"] = r.lambda;
    out["edges"] = edges;
    out["regions"] = regions;
    out["reject"] = r.reject();
    out["nonconverged_fits"] = r.diagnostics.nonconverged_fits;
    out["warnings"] = r.diagnostics.warnings;
    return out;
}

} // namespace

PYBIND11_MODULE(_ggm, m) {
    m.doc() = "Simultaneous tests for absent edges in Gaussian graphical models";

    py::register_exception<ggm::Error>(m, "GGMError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ggm::Error& e) {
            if (e.code() != ggm::Errc::invalid_argument && e.code() != ggm::Errc::parse_error) throw;
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    m.def("std_normal_quantile", &ggm::std_normal_quantile, py::arg("q"));
    m.def("std_normal_cdf", &ggm::std_normal_cdf, py::arg("x"));
    m.def("min_eigenvalue", &ggm::min_eigenvalue, py::arg("m"));

    m.def(
        "build_precision",
        [](const ggm::Matrix& adj, double v, double u) {
            return model_dict(ggm::build_precision(ggm::Adjacency{adj}, v, u));
        },
        py::arg("adjacency"), py::arg("v") = 0.3, py::arg("u") = 0.1);

    m.def(
        "generate",
        [](const std::string& design, ggm::Index p, ggm::Index n, std::uint64_t seed, double prob,
           ggm::Index groups, double a) {
            ggm::DesignParams params;
            params.prob = prob;
            params.groups = groups;
            params.a = a;
            ggm::Rng rng(seed);
            ggm::Rng graph_rng = rng.split(0);
            ggm::Rng data_rng = rng.split(1);
            const ggm::PrecisionModel model = ggm::make_model(ggm::parse_design(design), p, params, graph_rng);
            py::dict d = model_dict(model);
            d["data"] = ggm::sample_mvn(model, n, data_rng).values;
            return d;
        },
        py::arg("design"), py::arg("p"), py::arg("n") = 200, py::arg("seed") = 1, py::arg("prob") = -1.0,
        py::arg("groups") = 4, py::arg("a") = 1.0 / 20.0,
        "Precision model and n x p sample of one simulation design (same streams as the CLI).");

    m.def("null_edges", [](const std::string& design, ggm::Index p) {
        return from_edges(ggm::null_edge_set(ggm::parse_design(design), p));
    }, py::arg("design"), py::arg("p"));

    m.def(
        "penalty_level",
        [](ggm::Index n, ggm::Index p, ggm::Index d, double c_lambda, std::optional<double> gamma) {
            ggm::PenaltyConfig cfg;
            cfg.c_lambda = c_lambda;
            cfg.gamma = gamma;
            return ggm::penalty_level(n, p, d, cfg);
        },
        py::arg("n"), py::arg("p"), py::arg("d") = 1, py::arg("c_lambda") = 1.1, py::arg("gamma") = py::none());

    m.def(
        "lasso",
        [](const ggm::Vector& y, const ggm::Matrix& X, double lam, std::optional<ggm::Vector> loadings,
           double tol) {
            ggm::LassoOptions opts;
            opts.tol = tol;
            const ggm::Vector l = loadings ? *loadings : ggm::Vector::Ones(X.cols());
            return fit_dict(ggm::weighted_lasso(y, X, lam, l, opts));
        },
        py::arg("y"), py::arg("X"), py::arg("lam"), py::arg("loadings") = py::none(), py::arg("tol") = 1e-7,
        "argmin 1/2 E_n[(y - Xb)^2] + (lam/n) sum_j loadings_j |b_j|");

    m.def(
        "lasso_with_loadings",
        [](const ggm::Vector& y, const ggm::Matrix& X, double c_lambda, std::optional<double> gamma,
           int m_iterations) {
            ggm::PenaltyConfig cfg;
            cfg.c_lambda = c_lambda;
            cfg.gamma = gamma;
            cfg.m_iterations = m_iterations;
            return fit_dict(ggm::lasso_with_loadings(y, X, cfg));
        },
        py::arg("y"), py::arg("X"), py::arg("c_lambda") = 1.1, py::arg("gamma") = py::none(),
        py::arg("m_iterations") = 2);

    m.def(
        "sqrt_lasso",
        [](const ggm::Vector& y, const ggm::Matrix& X, double lam, std::optional<ggm::Vector> loadings) {
            const ggm::Vector l = loadings ? *loadings : ggm::Vector::Ones(X.cols());
            return fit_dict(ggm::sqrt_lasso(y, X, lam, l));
        },
        py::arg("y"), py::arg("X"), py::arg("lam"), py::arg("loadings") = py::none());

    m.def(
        "post_lasso",
        [](const ggm::Vector& y, const ggm::Matrix& X, const std::vector<ggm::Index>& support) {
            return ggm::post_lasso(y, X, support).coefficients;
        },
        py::arg("y"), py::arg("X"), py::arg("support"));

    m.def(
        "test_edges",
        [](const ggm::Matrix& X, const EdgeList& edges, double alpha, const std::string& solver,
           const std::string& region, int S, int exp, const std::string& tail, int folds,
           std::uint64_t seed, int B, double c_lambda, std::optional<double> gamma, int loading_iters,
           bool center) {
            ggm::Dataset data{X, ggm::default_names(X.cols())};
            ggm::InferenceConfig cfg;
            cfg.solver = ggm::parse_solver(solver);
            cfg.bootstrap_B = B;
            cfg.center = center;
            cfg.penalty.c_lambda = c_lambda;
            cfg.penalty.gamma = gamma;
            cfg.penalty.m_iterations = loading_iters;
            cfg.threads = ggm::default_threads();
            const auto spec = make_region(region, S, exp, tail, alpha);
            ggm::TestReport report;
            {
                py::gil_scoped_release release;
                report = ggm::cross_fit_inference(data, to_edges(edges), folds, cfg, {spec}, ggm::Rng(seed));
            }
            return report_dict(report);
        },
        py::arg("X"), py::arg("edges"), py::arg("alpha") = 0.05, py::arg("solver") = "lasso",
        py::arg("region") = "rect", py::arg("S") = 1, py::arg("exp") = 1, py::arg("tail") = "upper",
        py::arg("folds") = 1, py::arg("seed") = 1, py::arg("B") = 500, py::arg("c_lambda") = 1.1,
        py::arg("gamma") = py::none(), py::arg("loading_iters") = 2, py::arg("center") = true,
        "Test H0: none of the 0-based pairs in `edges` is an edge of the graph of X.");

    m.def(
        "simulate",
        [](const std::string& design, ggm::Index p, ggm::Index n, int l, int B, std::uint64_t seed,
           const std::vector<std::string>& solvers, std::vector<int> regions, int S, int exp,
           std::vector<int> folds, int threads) {
            ggm::SimConfig cfg;
            cfg.design = ggm::parse_design(design);
            cfg.p = p;
            cfg.n = n;
            cfg.replications = l;
            cfg.bootstrap_B = B;
            cfg.base_seed = seed;
            cfg.solvers.clear();
            for (const auto& s : solvers) cfg.solvers.push_back(ggm::parse_solver(s));
            cfg.regions = std::move(regions);
            cfg.sparsity = {{S, exp}};
            cfg.folds = std::move(folds);
            cfg.threads = threads > 0 ? threads : ggm::default_threads();
            std::string text;
            {
                py::gil_scoped_release release;
                text = ggm::to_json(ggm::acceptance_table(cfg)).dump();
            }
            return py::module_::import("json").attr("loads")(text);
        },
        py::arg("design"), py::arg("p"), py::arg("n") = 200, py::arg("l") = 200, py::arg("B") = 300,
        py::arg("seed") = 42, py::arg("solvers") = std::vector<std::string>{"lasso", "post-lasso"},
        py::arg("regions") = std::vector<int>{1, 2}, py::arg("S") = 1, py::arg("exp") = 1,
        py::arg("folds") = std::vector<int>{1}, py::arg("threads") = 0,
        "Monte Carlo acceptance rates under the design's null edge set.");
}
