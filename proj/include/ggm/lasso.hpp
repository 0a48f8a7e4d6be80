#pragma once

#include "ggm/numeric.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ggm {

/// Settings for the data-driven penalty
///   lambda = c_lambda * sqrt(n) * Phi^{-1}(1 - gamma / (2 p d)).
/// Recommended gamma range is [1/n, 1/log n]; c_lambda > 1.
struct PenaltyConfig {
    double c_lambda = 1.1;
    std::optional<double> gamma; ///< unset: 0.1 / log(n)
    int m_iterations = 2;        ///< loading refinement rounds
    Index d_total = 1;           ///< number of regressions sharing the union bound
    Index p_total = 0;           ///< variables in the formula; 0 means number of regressors

    double gamma_for(Index n) const;
};

struct LassoOptions {
    double tol = 1e-7;   ///< KKT tolerance certifying convergence
    int max_iter = 10000; ///< coordinate-descent sweeps
    /// When set, the penalized objective after every sweep is appended.
    std::vector<double>* objective_trace = nullptr;
};

struct LassoFit {
    Vector coefficients;
    std::vector<Index> support;
    double lambda = 0.0;
    Vector loadings;
    int iterations_used = 0;
    bool converged = false;
    double kkt_residual = 0.0; ///< max stationarity violation at return
};

/// Cross-products of a least-squares problem scaled by 1/n:
/// gram = X'X/n, xty = X'y/n, yy = y'y/n.
struct Moments {
    Matrix gram;
    Vector xty;
    double yy = 0.0;
    Index n = 0;

    static Moments of(const Vector& y, const Matrix& X);
};

/// Throws Errc::invalid_gamma when gamma / (2 p d) >= 1/2.
double penalty_level(Index n, Index p, Index d, const PenaltyConfig& cfg);

/// max_i ||x_i||_inf * sqrt(E_n[y^2]), identical for every coordinate.
Vector initial_loadings(const Vector& y, const Matrix& X);

/// sqrt(E_n[((y - X b) x_j)^2]) per coordinate.
/// Throws Errc::degenerate_loading if any component is below 1e-12.
Vector refine_loadings(const Vector& y, const Matrix& X, const LassoFit& fit);

/// argmin 1/2 E_n[(y - X b)^2] + (lambda/n) sum_j loadings_j |b_j|
/// by cyclic coordinate descent. A fit that exhausts max_iter is returned
/// with converged = false.
LassoFit weighted_lasso(const Vector& y, const Matrix& X, double lambda, const Vector& loadings,
                        const LassoOptions& opts = {});

LassoFit weighted_lasso(const Moments& m, double lambda, const Vector& loadings,
                        const LassoOptions& opts = {}, const Vector* warm_start = nullptr);

/// Initial loadings, m_iterations rounds of (fit, refine), then a final fit.
LassoFit lasso_with_loadings(const Vector& y, const Matrix& X, const PenaltyConfig& cfg,
                             const LassoOptions& opts = {});

LassoFit lasso_with_loadings(const Vector& y, const Matrix& X, const Moments& m, double lambda,
                             int m_iterations, const LassoOptions& opts = {});

struct PostLassoFit {
    Vector coefficients;
    std::vector<Index> dropped; ///< collinear support columns left out of the refit
};

/// OLS restricted to `support`, zero elsewhere. Collinear columns are dropped
/// highest index first.
PostLassoFit post_lasso(const Vector& y, const Matrix& X, std::span<const Index> support);
PostLassoFit post_lasso(const Moments& m, std::span<const Index> support);

/// argmin sqrt(E_n[(y - X b)^2]) + (lambda/n) sum_j loadings_j |b_j|.
LassoFit sqrt_lasso(const Vector& y, const Matrix& X, double lambda, const Vector& loadings,
                    const LassoOptions& opts = {});
LassoFit sqrt_lasso(const Moments& m, double lambda, const Vector& loadings,
                    const LassoOptions& opts = {});

/// Stationarity violation of a weighted-lasso solution recomputed from the raw
/// data; zero means the KKT conditions hold exactly.
double kkt_residual(const Vector& y, const Matrix& X, const Vector& beta, double lambda,
                    const Vector& loadings);

double lasso_objective(const Vector& y, const Matrix& X, const Vector& beta, double lambda,
                       const Vector& loadings);

} // namespace ggm
