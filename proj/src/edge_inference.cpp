#include "ggm/edge_inference.hpp"
#include "ggm/error.hpp"
#include "ggm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

namespace ggm {

int default_threads() {
    if (const char* env = std::getenv("GGM_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string_view to_string(Solver s) {
    switch (s) {
    case Solver::lasso: return "lasso";
    case Solver::post_lasso: return "post-lasso";
    case Solver::sqrt_lasso: return "sqrt-lasso";
    }
    return "?";
}

Solver parse_solver(std::string_view s) {
    if (s == "lasso") return Solver::lasso;
    if (s == "post-lasso" || s == "post_lasso") return Solver::post_lasso;
    if (s == "sqrt-lasso" || s == "sqrt_lasso") return Solver::sqrt_lasso;
    throw Error(Errc::invalid_argument, "unknown solver '" + std::string(s) + "'");
}

std::string_view to_string(RegionKind k) {
    switch (k) {
    case RegionKind::rectangle: return "rectangle";
    case RegionKind::two_sided_sup: return "two_sided_sup";
    case RegionKind::s_sparse: return "s_sparse";
    }
    return "?";
}

// --- scores -----------------------------------------------------------------

namespace {

double partial_dot(const Eigen::Ref<const Eigen::RowVectorXd>& x, Edge e, const Vector& eta) {
    const Index p = x.size();
    if (eta.size() != p - 2) throw Error(Errc::invalid_argument, "nuisance length must be p - 2");
    double s = 0.0;
    Index pos = 0;
    for (Index l = 0; l < p; ++l) {
        if (l == e.j || l == e.k) continue;
        s += eta(pos++) * x(l);
    }
    return s;
}

} // namespace

std::pair<double, double> score_parts(const Eigen::Ref<const Eigen::RowVectorXd>& x, Edge edge,
                                      const NuisancePair& eta) {
    const double v = x(edge.k) - partial_dot(x, edge, eta.eta2);
    const double u = x(edge.j) - partial_dot(x, edge, eta.eta1);
    return {-x(edge.k) * v, u * v};
}

double score(const Eigen::Ref<const Eigen::RowVectorXd>& x, Edge edge, double theta,
             const NuisancePair& eta) {
    const double v = x(edge.k) - partial_dot(x, edge, eta.eta2);
    const double u = x(edge.j) - theta * x(edge.k) - partial_dot(x, edge, eta.eta1);
    return u * v;
}

// --- nuisance regressions ---------------------------------------------------

namespace {

/// Lasso-type regressions of one column on others, sharing a Gram matrix of
/// the training rows.
class NuisanceFitter {
public:
    NuisanceFitter(const Matrix& X, const InferenceConfig& cfg, Index d)
        : X_(X), cfg_(cfg), gram_((X.transpose() * X) / static_cast<double>(X.rows())) {
        lambda_ = penalty_level(X.rows(), X.cols(), d, cfg.penalty);
    }

    double lambda() const { return lambda_; }

    Vector regress(Index response, const std::vector<Index>& regressors, Diagnostics& diag) const {
        Moments m;
        m.n = X_.rows();
        m.gram = gram_(regressors, regressors);
        m.xty = gram_(regressors, response);
        m.yy = gram_(response, response);
        const Matrix Xs = X_(Eigen::all, regressors);
        const Vector y = X_.col(response);

        if (cfg_.solver == Solver::sqrt_lasso) {
            const Vector loadings = m.gram.diagonal().cwiseSqrt().cwiseMax(1e-12);
            LassoFit fit = sqrt_lasso(m, lambda_, loadings, cfg_.lasso);
            ++diag.lasso_fits;
            if (!fit.converged) ++diag.nonconverged_fits;
            return std::move(fit.coefficients);
        }

        LassoFit fit =
            lasso_with_loadings(y, Xs, m, lambda_, cfg_.penalty.m_iterations, cfg_.lasso);
        ++diag.lasso_fits;
        if (!fit.converged) {
            ++diag.nonconverged_fits;
        } else if (cfg_.audit_kkt) {
            const double r = kkt_residual(y, Xs, fit.coefficients, fit.lambda, fit.loadings);
            ++diag.kkt_checked;
            diag.kkt_worst = std::max(diag.kkt_worst, r);
            if (!(r <= cfg_.lasso.tol)) ++diag.kkt_failed;
        }
        if (cfg_.solver == Solver::lasso) return std::move(fit.coefficients);

        PostLassoFit refit = post_lasso(m, fit.support);
        diag.post_lasso_dropped += static_cast<long>(refit.dropped.size());
        return std::move(refit.coefficients);
    }

private:
    const Matrix& X_;
    const InferenceConfig& cfg_;
    Matrix gram_;
    double lambda_ = 0.0;
};

NuisancePair split_nuisance(const Vector& first, Vector second, Edge e) {
    // First regression regressors are all columns but j; k < j sits at position k.
    NuisancePair eta;
    eta.theta_init = first(e.k);
    eta.eta1.resize(first.size() - 1);
    eta.eta1.head(e.k) = first.head(e.k);
    eta.eta1.tail(first.size() - 1 - e.k) = first.tail(first.size() - 1 - e.k);
    eta.eta2 = std::move(second);
    return eta;
}

struct Residuals {
    Vector u;  // X_j - eta1 X_{-m}
    Vector v;  // X_k - eta2 X_{-m}
    Vector xk;
};

Residuals residuals(const Matrix& X, Edge e, const NuisancePair& eta) {
    const std::vector<Index> rest = complement(X.cols(), {e.j, e.k});
    const Matrix Xm = X(Eigen::all, rest);
    return {X.col(e.j) - Xm * eta.eta1, X.col(e.k) - Xm * eta.eta2, X.col(e.k)};
}

EdgeStat stat_from_residuals(Edge e, const Residuals& r) {
    const double inv_n = 1.0 / static_cast<double>(r.u.size());
    const double mean_a = -(r.xk.cwiseProduct(r.v)).sum() * inv_n;
    if (!(std::abs(mean_a) >= 1e-12))
        throw Error(Errc::degenerate_jacobian, "|E_n[psi_a]| < 1e-12 (X_k collinear with the rest)");
    const double mean_b = (r.u.cwiseProduct(r.v)).sum() * inv_n;

    EdgeStat st;
    st.edge = e;
    st.theta_hat = -mean_b / mean_a;
    st.jacobian_hat = mean_a;
    const Vector psi = (r.u - st.theta_hat * r.xk).cwiseProduct(r.v);
    const double second = psi.squaredNorm() * inv_n;
    st.sigma_hat = std::sqrt(second / (mean_a * mean_a));
    if (!(st.sigma_hat > 0.0)) throw Error(Errc::degenerate_jacobian, "score variance vanished");
    st.psi_std = psi * (-1.0 / (st.sigma_hat * mean_a));
    return st;
}

std::string edge_label(Edge e) {
    return "(" + std::to_string(e.j + 1) + "," + std::to_string(e.k + 1) + ")";
}

} // namespace

NuisancePair fit_nuisance(const Dataset& data, Edge edge, const InferenceConfig& cfg) {
    validate_edges({edge}, data.p());
    if (data.n() < 2) throw Error(Errc::invalid_argument, "need n >= 2");
    NuisanceFitter fitter(data.values, cfg, cfg.penalty.d_total);
    Diagnostics diag;
    const Vector first = fitter.regress(edge.j, complement(data.p(), {edge.j}), diag);
    Vector second = fitter.regress(edge.k, complement(data.p(), {edge.j, edge.k}), diag);
    return split_nuisance(first, std::move(second), edge);
}

EdgeStat solve_theta(const Dataset& data, Edge edge, const NuisancePair& eta) {
    validate_edges({edge}, data.p());
    if (eta.eta1.size() != data.p() - 2 || eta.eta2.size() != data.p() - 2)
        throw Error(Errc::invalid_argument, "nuisance length must be p - 2");
    return stat_from_residuals(edge, residuals(data.values, edge, eta));
}

// --- bootstrap and regions --------------------------------------------------

Matrix multiplier_draws(const Matrix& psi_std, int B, Rng& rng) {
    if (B < 1) throw Error(Errc::invalid_argument, "bootstrap needs B >= 1");
    const Index n = psi_std.rows();
    Matrix xi(B, n);
    for (Index b = 0; b < B; ++b)
        for (Index i = 0; i < n; ++i) xi(b, i) = rng.normal();
    return (xi * psi_std) / std::sqrt(static_cast<double>(n));
}

double empirical_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw Error(Errc::invalid_argument, "quantile of an empty sample");
    if (!(q > 0.0 && q <= 1.0)) throw Error(Errc::out_of_range, "quantile level must lie in (0,1]");
    const auto B = static_cast<double>(values.size());
    // ceil(q B) with a guard against q*B landing a hair above an integer.
    auto rank = static_cast<std::size_t>(std::ceil(q * B - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(values.begin(), nth, values.end());
    return *nth;
}

std::vector<double> bootstrap_sup(const Matrix& psi_std, const std::vector<double>& alphas, int B,
                                  Rng& rng) {
    const Matrix draws = multiplier_draws(psi_std, B, rng);
    std::vector<double> sups(static_cast<std::size_t>(B));
    for (Index b = 0; b < B; ++b) sups[static_cast<std::size_t>(b)] = draws.row(b).cwiseAbs().maxCoeff();
    std::vector<double> out;
    for (double a : alphas) out.push_back(empirical_quantile(sups, 1.0 - a));
    return out;
}

Vector sparse_transform(const Vector& v, int S, int exp) {
    const Index d = v.size();
    Vector out = Vector::Zero(d);
    for (Index r = 0; r < d; ++r) {
        double acc = 0.0;
        for (int s = 1; s <= S; ++s) {
            const Index idx = ((r - s) % d + d) % d;
            acc += exp == 1 ? v(idx) : v(idx) * v(idx);
        }
        out(r) = acc;
    }
    return out;
}

namespace {

void check_spec(const RegionSpec& spec, Index d) {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw Error(Errc::invalid_argument, "alpha must lie in (0,1)");
    if (spec.kind == RegionKind::s_sparse) {
        if (spec.S < 1 || spec.S > d)
            throw Error(Errc::invalid_argument, "s_sparse region needs 1 <= S <= d");
        if (spec.exp != 1 && spec.exp != 2)
            throw Error(Errc::invalid_argument, "exp must be 1 or 2");
    }
}

double sup_statistic(const Vector& v, const RegionSpec& spec) {
    if (spec.kind == RegionKind::s_sparse) return sparse_transform(v, spec.S, spec.exp).cwiseAbs().maxCoeff();
    return v.cwiseAbs().maxCoeff();
}

bool same_statistic(const RegionSpec& spec, const Criticals& c) {
    if (c.kind != spec.kind || c.alpha != spec.alpha) return false;
    return spec.kind != RegionKind::s_sparse || (c.S == spec.S && c.exp == spec.exp);
}

} // namespace

Criticals critical_values(const Matrix& draws, const RegionSpec& spec) {
    check_spec(spec, draws.cols());
    std::vector<double> sups(static_cast<std::size_t>(draws.rows()));
    for (Index b = 0; b < draws.rows(); ++b)
        sups[static_cast<std::size_t>(b)] = sup_statistic(draws.row(b).transpose(), spec);
    Criticals c;
    c.kind = spec.kind;
    c.S = spec.S;
    c.exp = spec.exp;
    c.alpha = spec.alpha;
    c.upper = empirical_quantile(sups, 1.0 - spec.alpha);
    c.lower_half = empirical_quantile(sups, spec.alpha / 2.0);
    c.upper_half = empirical_quantile(sups, 1.0 - spec.alpha / 2.0);
    return c;
}

RegionDecision region_decide(const std::vector<EdgeStat>& stats, Index n, const RegionSpec& spec,
                             const Criticals& crit) {
    if (!same_statistic(spec, crit))
        throw Error(Errc::spec_mismatch, "critical values were built for a different region");
    const auto d = static_cast<Index>(stats.size());
    if (d == 0) throw Error(Errc::invalid_argument, "no edges to decide on");
    check_spec(spec, d);

    const double root_n = std::sqrt(static_cast<double>(n));
    Vector t(d);
    for (Index r = 0; r < d; ++r) {
        const EdgeStat& s = stats[static_cast<std::size_t>(r)];
        t(r) = root_n * s.theta_hat / s.sigma_hat;
    }

    RegionDecision out;
    out.statistic = sup_statistic(t, spec);
    const bool two_sided = spec.kind == RegionKind::two_sided_sup ||
                           (spec.kind == RegionKind::s_sparse && spec.tail == Tail::two_sided);
    out.reject = two_sided ? (out.statistic < crit.lower_half || out.statistic > crit.upper_half)
                           : out.statistic > crit.upper;
    if (spec.kind != RegionKind::s_sparse) {
        const double c = two_sided ? crit.upper_half : crit.upper;
        for (const EdgeStat& s : stats) {
            const double half = c * s.sigma_hat / root_n;
            out.intervals.push_back({s.theta_hat - half, s.theta_hat + half});
        }
    }
    return out;
}

// --- full procedures --------------------------------------------------------

void validate_edges(const EdgeSet& edges, Index p) {
    if (p < 3) throw Error(Errc::invalid_argument, "edge inference needs p >= 3");
    for (const Edge& e : edges) {
        if (e.j == e.k) throw Error(Errc::invalid_argument, "self-loop not a valid edge");
        if (e.j < e.k || e.k < 0 || e.j >= p)
            throw Error(Errc::invalid_argument, "edge " + edge_label(e) + " is not a valid pair for p = " +
                                                    std::to_string(p));
    }
}

std::vector<int> random_folds(Index n, int K, Rng& rng) {
    if (K < 1) throw Error(Errc::invalid_argument, "K must be >= 1");
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    // Fold sizes floor(n/K) or +1, the larger ones first.
    std::vector<int> fold_of(static_cast<std::size_t>(n));
    const Index base = n / K;
    const Index extra = n % K;
    Index pos = 0;
    for (int k = 0; k < K; ++k) {
        const Index size = base + (k < extra ? 1 : 0);
        for (Index c = 0; c < size; ++c) fold_of[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos++)])] = k;
    }
    return fold_of;
}

TestReport cross_fit_inference(const Dataset& data, const EdgeSet& edges,
                               const std::vector<int>& fold_of, int K, const InferenceConfig& cfg_in,
                               const std::vector<RegionSpec>& specs, const Rng& rng) {
    const Index n = data.n();
    const Index p = data.p();
    const auto d = static_cast<Index>(edges.size());
    if (d == 0) throw Error(Errc::invalid_argument, "edge set is empty");
    validate_edges(edges, p);
    if (K < 1) throw Error(Errc::invalid_argument, "K must be >= 1");
    if (static_cast<Index>(fold_of.size()) != n)
        throw Error(Errc::invalid_argument, "fold map length != n");
    if (cfg_in.bootstrap_B < 1) throw Error(Errc::invalid_argument, "bootstrap B must be >= 1");
    for (const RegionSpec& s : specs) check_spec(s, d);
    if (!data.values.allFinite()) throw Error(Errc::invalid_argument, "data contains non-finite values");

    InferenceConfig cfg = cfg_in;
    cfg.penalty.d_total = d;

    TestReport report;
    report.n = n;
    report.p = p;
    report.folds = K;
    report.config = cfg;
    report.seed = rng.seed();
    report.stream = rng.stream();

    Matrix X = data.values;
    if (cfg.center) X.rowwise() -= X.colwise().mean();

    std::vector<std::vector<Index>> fold_rows(static_cast<std::size_t>(K));
    for (Index i = 0; i < n; ++i) {
        const int f = fold_of[static_cast<std::size_t>(i)];
        if (f < 0 || f >= K) throw Error(Errc::invalid_argument, "fold label out of range");
        fold_rows[static_cast<std::size_t>(f)].push_back(i);
    }
    for (const auto& rows : fold_rows) {
        if (rows.size() < 2) throw Error(Errc::fold_too_small, "every fold needs at least 2 observations");
        if (rows.size() != fold_rows.front().size()) report.diagnostics.uneven_folds = true;
    }
    if (report.diagnostics.uneven_folds)
        report.diagnostics.warnings.push_back("n is not divisible by K; fold sizes differ by one");

    // Residual pieces of every observation under its own fold's nuisance.
    std::vector<Residuals> res(static_cast<std::size_t>(d));
    for (auto& r : res) r = {Vector(n), Vector(n), Vector(n)};
    std::vector<NuisancePair> last_eta(static_cast<std::size_t>(d));

    for (int k = 0; k < K; ++k) {
        const auto& rows = fold_rows[static_cast<std::size_t>(k)];
        std::vector<Index> train;
        if (K == 1) {
            train = rows;
        } else {
            for (int o = 0; o < K; ++o)
                if (o != k) train.insert(train.end(), fold_rows[static_cast<std::size_t>(o)].begin(),
                                         fold_rows[static_cast<std::size_t>(o)].end());
            std::sort(train.begin(), train.end());
        }
        const auto n_train = static_cast<Index>(train.size());
        if (n_train < p && cfg.solver == Solver::post_lasso)
            report.diagnostics.warnings.push_back(
                std::string(errc_name(Errc::fold_too_small)) + ": training size " +
                std::to_string(n_train) + " < p; post-lasso refits may be rank deficient");

        const Matrix Xtr = X(train, Eigen::all);
        const NuisanceFitter fitter(Xtr, cfg, d);
        if (k == 0) report.lambda = fitter.lambda();

        // Regressions of X_j on X_{-j} are shared by all edges with the same j.
        std::vector<Index> heads;
        for (const Edge& e : edges) heads.push_back(e.j);
        std::sort(heads.begin(), heads.end());
        heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

        std::vector<Vector> first(heads.size());
        std::vector<Diagnostics> diag_first(heads.size());
        parallel_for(heads.size(), cfg.threads, [&](std::size_t h) {
            first[h] = fitter.regress(heads[h], complement(p, {heads[h]}), diag_first[h]);
        });
        std::map<Index, std::size_t> head_pos;
        for (std::size_t h = 0; h < heads.size(); ++h) head_pos[heads[h]] = h;

        const Matrix Xf = X(rows, Eigen::all);
        std::vector<Diagnostics> diag_edge(static_cast<std::size_t>(d));
        parallel_for(static_cast<std::size_t>(d), cfg.threads, [&](std::size_t r) {
            const Edge e = edges[r];
            Vector second = fitter.regress(e.k, complement(p, {e.j, e.k}), diag_edge[r]);
            NuisancePair eta = split_nuisance(first[head_pos.at(e.j)], std::move(second), e);
            const Residuals fr = residuals(Xf, e, eta);
            for (std::size_t a = 0; a < rows.size(); ++a) {
                const Index i = rows[a];
                const auto ia = static_cast<Index>(a);
                res[r].u(i) = fr.u(ia);
                res[r].v(i) = fr.v(ia);
                res[r].xk(i) = fr.xk(ia);
            }
            last_eta[r] = std::move(eta);
        });

        auto merge = [&](const Diagnostics& s) {
            Diagnostics& t = report.diagnostics;
            t.lasso_fits += s.lasso_fits;
            t.nonconverged_fits += s.nonconverged_fits;
            t.kkt_checked += s.kkt_checked;
            t.kkt_failed += s.kkt_failed;
            t.kkt_worst = std::max(t.kkt_worst, s.kkt_worst);
            t.post_lasso_dropped += s.post_lasso_dropped;
        };
        for (const auto& s : diag_first) merge(s);
        for (const auto& s : diag_edge) merge(s);
    }

    std::vector<EdgeStat> stats(static_cast<std::size_t>(d));
    for (Index r = 0; r < d; ++r) {
        const Edge e = edges[static_cast<std::size_t>(r)];
        const Residuals& rr = res[static_cast<std::size_t>(r)];
        try {
            if (K == 1) {
                stats[static_cast<std::size_t>(r)] = stat_from_residuals(e, rr);
                continue;
            }
            double theta_sum = 0.0;
            double jac_sum = 0.0;
            for (const auto& rows : fold_rows) {
                double xv = 0.0;
                double uv = 0.0;
                for (Index i : rows) {
                    xv += rr.xk(i) * rr.v(i);
                    uv += rr.u(i) * rr.v(i);
                }
                if (!(std::abs(xv) / static_cast<double>(rows.size()) >= 1e-12))
                    throw Error(Errc::degenerate_jacobian, "|E_N,k[psi_a]| < 1e-12 in a fold");
                theta_sum += uv / xv;
                jac_sum += -xv / static_cast<double>(rows.size());
            }
            EdgeStat st;
            st.edge = e;
            st.theta_hat = theta_sum / K;
            st.jacobian_hat = jac_sum / K;
            const Vector psi = (rr.u - st.theta_hat * rr.xk).cwiseProduct(rr.v);
            double second_sum = 0.0;
            for (const auto& rows : fold_rows) {
                double acc = 0.0;
                for (Index i : rows) acc += psi(i) * psi(i);
                second_sum += acc / static_cast<double>(rows.size());
            }
            st.sigma_hat = std::sqrt(second_sum / K / (st.jacobian_hat * st.jacobian_hat));
            if (!(st.sigma_hat > 0.0)) throw Error(Errc::degenerate_jacobian, "score variance vanished");
            st.psi_std = psi * (-1.0 / (st.sigma_hat * st.jacobian_hat));
            stats[static_cast<std::size_t>(r)] = std::move(st);
        } catch (const Error& err) {
            std::string msg = err.what();
            const std::string prefix = std::string(errc_name(err.code())) + ": ";
            if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
            throw Error(err.code(), "edge " + edge_label(e) + ": " + msg);
        }
    }

    report.psi_std.resize(n, d);
    for (Index r = 0; r < d; ++r) report.psi_std.col(r) = stats[static_cast<std::size_t>(r)].psi_std;
    Rng boot = rng.split(2);
    report.bootstrap_draws = multiplier_draws(report.psi_std, cfg.bootstrap_B, boot);

    const double alpha = specs.empty() ? 0.05 : specs.front().alpha;
    const Criticals rect = critical_values(report.bootstrap_draws, RegionSpec::rectangle(alpha));
    const double root_n = std::sqrt(static_cast<double>(n));
    for (Index r = 0; r < d; ++r) {
        const EdgeStat& s = stats[static_cast<std::size_t>(r)];
        EdgeResult er;
        er.edge = s.edge;
        er.theta_hat = s.theta_hat;
        er.sigma_hat = s.sigma_hat;
        er.jacobian_hat = s.jacobian_hat;
        er.t_stat = root_n * s.theta_hat / s.sigma_hat;
        const double half = rect.upper * s.sigma_hat / root_n;
        er.interval = {s.theta_hat - half, s.theta_hat + half};
        er.theta_init = last_eta[static_cast<std::size_t>(r)].theta_init;
        report.edges.push_back(er);
    }

    for (const RegionSpec& spec : specs) {
        RegionOutcome out;
        out.spec = spec;
        out.criticals = critical_values(report.bootstrap_draws, spec);
        const RegionDecision dec = region_decide(stats, n, spec, out.criticals);
        out.statistic = dec.statistic;
        out.reject = dec.reject;
        report.regions.push_back(out);
    }
    return report;
}

TestReport cross_fit_inference(const Dataset& data, const EdgeSet& edges, int K,
                               const InferenceConfig& cfg, const std::vector<RegionSpec>& specs,
                               const Rng& rng) {
    if (K < 1) throw Error(Errc::invalid_argument, "K must be >= 1");
    std::vector<int> fold_of;
    if (K == 1) {
        fold_of.assign(static_cast<std::size_t>(data.n()), 0);
    } else {
        Rng split_rng = rng.split(1);
        fold_of = random_folds(data.n(), K, split_rng);
    }
    return cross_fit_inference(data, edges, fold_of, K, cfg, specs, rng);
}

TestReport test_edges(const Dataset& data, const EdgeSet& edges, const InferenceConfig& cfg,
                      const std::vector<RegionSpec>& specs, const Rng& rng) {
    return cross_fit_inference(data, edges, 1, cfg, specs, rng);
}

} // namespace ggm
