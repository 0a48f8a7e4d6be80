#include "ggm/lasso.hpp"
#include "ggm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ggm {

double PenaltyConfig::gamma_for(Index n) const {
    if (gamma) return *gamma;
    return 0.1 / std::log(static_cast<double>(std::max<Index>(n, 3)));
}

Moments Moments::of(const Vector& y, const Matrix& X) {
    if (X.rows() != y.size()) throw Error(Errc::invalid_argument, "rows(X) != len(y)");
    const double inv_n = 1.0 / static_cast<double>(y.size());
    Moments m;
    m.n = y.size();
    m.gram = (X.transpose() * X) * inv_n;
    m.xty = (X.transpose() * y) * inv_n;
    m.yy = y.squaredNorm() * inv_n;
    return m;
}

double penalty_level(Index n, Index p, Index d, const PenaltyConfig& cfg) {
    if (n < 1 || p < 1 || d < 1) throw Error(Errc::invalid_argument, "n, p, d must be >= 1");
    const double gamma = cfg.gamma_for(n);
    const double tail = gamma / (2.0 * static_cast<double>(p) * static_cast<double>(d));
    if (!(tail > 0.0) || tail >= 0.5)
        throw Error(Errc::invalid_gamma, "gamma/(2pd) = " + std::to_string(tail) +
                                             " must lie in (0, 1/2)");
    return cfg.c_lambda * std::sqrt(static_cast<double>(n)) * std_normal_quantile(1.0 - tail);
}

Vector initial_loadings(const Vector& y, const Matrix& X) {
    if (y.size() < 2) throw Error(Errc::invalid_argument, "need n >= 2");
    const double max_abs = X.size() > 0 ? X.cwiseAbs().maxCoeff() : 0.0;
    const double rms = std::sqrt(y.squaredNorm() / static_cast<double>(y.size()));
    return Vector::Constant(X.cols(), max_abs * rms);
}

namespace {

constexpr double loading_floor = 1e-12;

Vector raw_refined_loadings(const Vector& y, const Matrix& X, const Vector& beta) {
    const Vector resid = y - X * beta;
    const Vector r2 = resid.array().square();
    const double inv_n = 1.0 / static_cast<double>(y.size());
    Vector out(X.cols());
    for (Index j = 0; j < X.cols(); ++j)
        out(j) = std::sqrt((X.col(j).array().square() * r2.array()).sum() * inv_n);
    return out;
}

std::vector<Index> support_of(const Vector& beta) {
    std::vector<Index> s;
    for (Index j = 0; j < beta.size(); ++j)
        if (beta(j) != 0.0) s.push_back(j);
    return s;
}

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

// Stationarity violation given the gradient g = E_n[(y - Xb) x] and per-coordinate
// thresholds t_j = (lambda/n) * loading_j.
double kkt_violation(const Vector& g, const Vector& beta, const Vector& thresh) {
    double worst = 0.0;
    for (Index j = 0; j < beta.size(); ++j) {
        double v;
        if (beta(j) > 0.0)
            v = std::abs(g(j) - thresh(j));
        else if (beta(j) < 0.0)
            v = std::abs(g(j) + thresh(j));
        else
            v = std::max(0.0, std::abs(g(j)) - thresh(j));
        worst = std::max(worst, v);
    }
    return worst;
}

double penalized_objective(const Moments& m, const Vector& beta, const Vector& thresh) {
    const double rss = m.yy - 2.0 * beta.dot(m.xty) + beta.dot(m.gram * beta);
    return 0.5 * rss + thresh.cwiseProduct(beta.cwiseAbs()).sum();
}

void check_loadings(const Vector& loadings, Index p, double lambda) {
    if (loadings.size() != p) throw Error(Errc::invalid_argument, "loadings length != columns");
    if (!(lambda >= 0.0)) throw Error(Errc::invalid_argument, "lambda must be >= 0");
    for (Index j = 0; j < p; ++j)
        if (!(loadings(j) > 0.0)) throw Error(Errc::invalid_argument, "loadings must be > 0");
}

} // namespace

Vector refine_loadings(const Vector& y, const Matrix& X, const LassoFit& fit) {
    Vector out = raw_refined_loadings(y, X, fit.coefficients);
    for (Index j = 0; j < out.size(); ++j)
        if (out(j) < loading_floor)
            throw Error(Errc::degenerate_loading,
                        "loading " + std::to_string(j) + " vanished (perfect fit)");
    return out;
}

LassoFit weighted_lasso(const Moments& m, double lambda, const Vector& loadings,
                        const LassoOptions& opts, const Vector* warm_start) {
    const Index p = m.gram.rows();
    check_loadings(loadings, p, lambda);
    const Vector thresh = (lambda / static_cast<double>(m.n)) * loadings;

    Vector beta = warm_start ? *warm_start : Vector::Zero(p);
    Vector grad = m.xty - m.gram * beta;

    LassoFit fit;
    fit.lambda = lambda;
    fit.loadings = loadings;

    int sweep = 0;
    double violation = kkt_violation(grad, beta, thresh);
    while (violation > 0.5 * opts.tol && sweep < opts.max_iter) {
        ++sweep;
        for (Index j = 0; j < p; ++j) {
            const double gjj = m.gram(j, j);
            const double old = beta(j);
            const double next = gjj > 0.0 ? soft_threshold(grad(j) + gjj * old, thresh(j)) / gjj : 0.0;
            if (next != old) {
                grad.noalias() -= m.gram.col(j) * (next - old);
                beta(j) = next;
            }
        }
        if (opts.objective_trace) opts.objective_trace->push_back(penalized_objective(m, beta, thresh));
        violation = kkt_violation(grad, beta, thresh);
        if (violation <= 0.5 * opts.tol) {
            // Drop accumulated update error before certifying.
            grad = m.xty - m.gram * beta;
            violation = kkt_violation(grad, beta, thresh);
        }
    }

    fit.coefficients = std::move(beta);
    fit.support = support_of(fit.coefficients);
    fit.iterations_used = sweep;
    fit.kkt_residual = violation;
    fit.converged = violation <= opts.tol;
    return fit;
}

LassoFit weighted_lasso(const Vector& y, const Matrix& X, double lambda, const Vector& loadings,
                        const LassoOptions& opts) {
    return weighted_lasso(Moments::of(y, X), lambda, loadings, opts);
}

LassoFit lasso_with_loadings(const Vector& y, const Matrix& X, const Moments& m, double lambda,
                             int m_iterations, const LassoOptions& opts) {
    if (m_iterations < 0) throw Error(Errc::invalid_argument, "m_iterations must be >= 0");
    Vector loadings = initial_loadings(y, X);
    // A zero response makes every loading zero; any positive loading then gives the zero fit.
    loadings = loadings.cwiseMax(loading_floor);
    LassoFit fit = weighted_lasso(m, lambda, loadings, opts);
    for (int round = 0; round < m_iterations; ++round) {
        loadings = raw_refined_loadings(y, X, fit.coefficients).cwiseMax(loading_floor);
        fit = weighted_lasso(m, lambda, loadings, opts, &fit.coefficients);
    }
    return fit;
}

LassoFit lasso_with_loadings(const Vector& y, const Matrix& X, const PenaltyConfig& cfg,
                             const LassoOptions& opts) {
    const Index p = cfg.p_total > 0 ? cfg.p_total : X.cols();
    const double lambda = penalty_level(y.size(), p, cfg.d_total, cfg);
    return lasso_with_loadings(y, X, Moments::of(y, X), lambda, cfg.m_iterations, opts);
}

PostLassoFit post_lasso(const Moments& m, std::span<const Index> support) {
    const Index p = m.gram.rows();
    PostLassoFit out;
    out.coefficients = Vector::Zero(p);
    if (support.empty()) return out;

    std::vector<Index> cols(support.begin(), support.end());
    std::sort(cols.begin(), cols.end());

    // Incremental Cholesky of the support Gram; a column whose Schur pivot
    // collapses is collinear with the lower-indexed ones already accepted.
    const auto s = static_cast<Index>(cols.size());
    Matrix L = Matrix::Zero(s, s);
    std::vector<Index> used;
    for (Index c : cols) {
        if (c < 0 || c >= p) throw Error(Errc::invalid_argument, "support index out of range");
        const auto r = static_cast<Index>(used.size());
        Vector row(r);
        for (Index a = 0; a < r; ++a) {
            double v = m.gram(used[static_cast<std::size_t>(a)], c);
            for (Index b = 0; b < a; ++b) v -= L(a, b) * row(b);
            row(a) = v / L(a, a);
        }
        const double pivot = m.gram(c, c) - row.squaredNorm();
        if (m.gram(c, c) > 0.0 && pivot > 1e-10 * m.gram(c, c)) {
            L.row(r).head(r) = row.transpose();
            L(r, r) = std::sqrt(pivot);
            used.push_back(c);
        } else {
            out.dropped.push_back(c);
        }
    }
    const auto r = static_cast<Index>(used.size());
    if (r == 0) return out;
    Vector rhs(r);
    for (Index a = 0; a < r; ++a) rhs(a) = m.xty(used[static_cast<std::size_t>(a)]);
    const auto Lr = L.topLeftCorner(r, r).triangularView<Eigen::Lower>();
    const Vector b = Lr.transpose().solve(Lr.solve(rhs));
    for (Index a = 0; a < r; ++a) out.coefficients(used[static_cast<std::size_t>(a)]) = b(a);
    return out;
}

PostLassoFit post_lasso(const Vector& y, const Matrix& X, std::span<const Index> support) {
    std::vector<Index> cols(support.begin(), support.end());
    std::sort(cols.begin(), cols.end());
    PostLassoFit out;
    out.coefficients = Vector::Zero(X.cols());
    if (cols.empty()) return out;
    // Screen collinearity on the Gram, then refit the surviving columns by QR.
    const PostLassoFit screened = post_lasso(Moments::of(y, X), cols);
    out.dropped = screened.dropped;
    std::vector<Index> kept;
    for (Index c : cols)
        if (std::find(out.dropped.begin(), out.dropped.end(), c) == out.dropped.end())
            kept.push_back(c);
    if (kept.empty()) return out;
    Matrix Xs(X.rows(), static_cast<Index>(kept.size()));
    for (std::size_t a = 0; a < kept.size(); ++a) Xs.col(static_cast<Index>(a)) = X.col(kept[a]);
    const Vector b = solve_ols(y, Xs);
    for (std::size_t a = 0; a < kept.size(); ++a) out.coefficients(kept[a]) = b(static_cast<Index>(a));
    return out;
}

LassoFit sqrt_lasso(const Moments& m, double lambda, const Vector& loadings,
                    const LassoOptions& opts) {
    const Index p = m.gram.rows();
    check_loadings(loadings, p, lambda);
    const Vector thresh = (lambda / static_cast<double>(m.n)) * loadings;

    Vector beta = Vector::Zero(p);
    Vector grad = m.xty;
    double rss = m.yy; // E_n[r^2] at the current beta

    LassoFit fit;
    fit.lambda = lambda;
    fit.loadings = loadings;

    // Stationarity of sqrt(E_n r^2) + sum t_j |b_j| is that of the lasso with
    // thresholds scaled by the residual RMS.
    auto violation_now = [&]() {
        const double rms = std::sqrt(std::max(rss, 0.0));
        return kkt_violation(grad, beta, thresh * rms);
    };

    int sweep = 0;
    double violation = violation_now();
    while (violation > 0.5 * opts.tol && sweep < opts.max_iter) {
        ++sweep;
        double max_change = 0.0;
        for (Index j = 0; j < p; ++j) {
            const double a = m.gram(j, j);
            const double old = beta(j);
            if (!(a > 0.0)) continue;
            const double c = grad(j) + a * old;          // E_n[r_{-j} x_j]
            const double q = std::max(rss + 2.0 * old * grad(j) + a * old * old, 0.0);
            const double t = thresh(j);
            double next = 0.0;
            if (std::abs(c) > t * std::sqrt(q)) {
                const double resid_floor = std::max(q - c * c / a, 0.0);
                const double shrink = t * std::sqrt(resid_floor / (a * (a - t * t)));
                next = c / a - (c > 0.0 ? shrink : -shrink);
            }
            if (next != old) {
                const double delta = next - old;
                grad.noalias() -= m.gram.col(j) * delta;
                rss = q - 2.0 * next * c + a * next * next;
                beta(j) = next;
                max_change = std::max(max_change, std::abs(delta) * std::sqrt(a));
            }
        }
        rss = std::max(m.yy - 2.0 * beta.dot(m.xty) + beta.dot(m.gram * beta), 0.0);
        grad = m.xty - m.gram * beta;
        if (opts.objective_trace)
            opts.objective_trace->push_back(std::sqrt(rss) + thresh.cwiseProduct(beta.cwiseAbs()).sum());
        violation = violation_now();
        // A perfect fit leaves the root non-differentiable; stop once coefficients settle.
        if (rss < 1e-28 && max_change <= opts.tol) violation = 0.0;
    }

    fit.coefficients = std::move(beta);
    fit.support = support_of(fit.coefficients);
    fit.iterations_used = sweep;
    fit.kkt_residual = violation;
    fit.converged = violation <= opts.tol;
    return fit;
}

LassoFit sqrt_lasso(const Vector& y, const Matrix& X, double lambda, const Vector& loadings,
                    const LassoOptions& opts) {
    return sqrt_lasso(Moments::of(y, X), lambda, loadings, opts);
}

double kkt_residual(const Vector& y, const Matrix& X, const Vector& beta, double lambda,
                    const Vector& loadings) {
    const double inv_n = 1.0 / static_cast<double>(y.size());
    const Vector grad = (X.transpose() * (y - X * beta)) * inv_n;
    return kkt_violation(grad, beta, (lambda * inv_n) * loadings);
}

double lasso_objective(const Vector& y, const Matrix& X, const Vector& beta, double lambda,
                       const Vector& loadings) {
    const double inv_n = 1.0 / static_cast<double>(y.size());
    return 0.5 * (y - X * beta).squaredNorm() * inv_n +
           lambda * inv_n * loadings.cwiseProduct(beta.cwiseAbs()).sum();
}

} // namespace ggm
