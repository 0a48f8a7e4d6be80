#pragma once

#include "ggm/graph_gen.hpp"
#include "ggm/lasso.hpp"
#include "ggm/rng.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ggm {

enum class Solver { lasso, post_lasso, sqrt_lasso };

std::string_view to_string(Solver s);
Solver parse_solver(std::string_view s);

/// Nuisance coefficients for one edge (j, k). Both vectors are indexed by the
/// remaining variables in ascending order (all columns except j and k).
struct NuisancePair {
    Vector eta1;              ///< X_j on X_{-j}, with the X_k coefficient split off
    Vector eta2;              ///< X_k on X_{-{j,k}}
    double theta_init = 0.0;  ///< X_k coefficient of the first regression (diagnostic)
};

struct EdgeStat {
    Edge edge;
    double theta_hat = 0.0;
    double jacobian_hat = 0.0; ///< -E_n[X_k (X_k - eta2 X_{-m})]
    double sigma_hat = 0.0;
    Vector psi_std;            ///< -psi / (sigma_hat * jacobian_hat) per observation
};

enum class RegionKind { rectangle, two_sided_sup, s_sparse };
enum class Tail { upper, two_sided };

std::string_view to_string(RegionKind k);

/// Confidence-region family used for the decision.
///
/// rectangle       reject iff sup_r |t_r| > c_{1-alpha}
/// two_sided_sup   reject iff sup_r |t_r| < c_{alpha/2} or > c_{1-alpha/2}
/// s_sparse        sup_r |sum_{s=1..S} t_{r-s}^exp| against the matching
///                 bootstrap statistic, with circular indexing; `tail`
///                 selects the upper or the equal-tailed rule.
/// Here t_r = sqrt(n) theta_r / sigma_r and c_q is the q-quantile of the
/// bootstrap distribution of the corresponding sup statistic.
struct RegionSpec {
    RegionKind kind = RegionKind::rectangle;
    int S = 1;
    int exp = 1;
    Tail tail = Tail::upper;
    double alpha = 0.05;

    static RegionSpec rectangle(double alpha = 0.05) { return {RegionKind::rectangle, 1, 1, Tail::upper, alpha}; }
    static RegionSpec two_sided(double alpha = 0.05) { return {RegionKind::two_sided_sup, 1, 1, Tail::two_sided, alpha}; }
    static RegionSpec sparse(int S, int exp, Tail tail, double alpha = 0.05) {
        return {RegionKind::s_sparse, S, exp, tail, alpha};
    }
};

/// Bootstrap quantiles of the sup statistic matching one RegionSpec.
struct Criticals {
    RegionKind kind = RegionKind::rectangle;
    int S = 1;
    int exp = 1;
    double alpha = 0.05;
    double upper = 0.0;       ///< (1 - alpha)-quantile
    double lower_half = 0.0;  ///< (alpha/2)-quantile
    double upper_half = 0.0;  ///< (1 - alpha/2)-quantile
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct RegionDecision {
    bool reject = false;
    double statistic = 0.0;
    std::vector<Interval> intervals; ///< empty for s_sparse regions
};

struct InferenceConfig {
    Solver solver = Solver::lasso;
    PenaltyConfig penalty;   ///< d_total is overwritten with |edges| by test_edges
    LassoOptions lasso;
    int bootstrap_B = 500;
    bool center = true;      ///< subtract column means before fitting
    bool audit_kkt = false;  ///< recheck every lasso fit's KKT certificate on raw data
    int threads = 1;
};

struct Diagnostics {
    long lasso_fits = 0;
    long nonconverged_fits = 0;
    long kkt_checked = 0;
    long kkt_failed = 0;
    double kkt_worst = 0.0;
    long post_lasso_dropped = 0;
    bool uneven_folds = false;
    std::vector<std::string> warnings;
};

struct EdgeResult {
    Edge edge;
    double theta_hat = 0.0;
    double sigma_hat = 0.0;
    double jacobian_hat = 0.0;
    double t_stat = 0.0;      ///< sqrt(n) theta_hat / sigma_hat
    Interval interval;        ///< theta_hat -/+ c_{1-alpha} sigma_hat / sqrt(n)
    double theta_init = 0.0;
};

struct RegionOutcome {
    RegionSpec spec;
    Criticals criticals;
    double statistic = 0.0;
    bool reject = false;
};

struct TestReport {
    Index n = 0;
    Index p = 0;
    int folds = 1;
    double lambda = 0.0;
    InferenceConfig config;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::vector<EdgeResult> edges;
    std::vector<RegionOutcome> regions;
    Diagnostics diagnostics;
    Matrix bootstrap_draws; ///< B x d multiplier-bootstrap process values
    Matrix psi_std;         ///< n x d standardized scores

    /// Decision of the first region (the one scripting mode reports).
    bool reject() const { return !regions.empty() && regions.front().reject; }
};

// --- scores -----------------------------------------------------------------

/// (X_j - theta X_k - eta1 X_{-m}) (X_k - eta2 X_{-m}) for one observation.
double score(const Eigen::Ref<const Eigen::RowVectorXd>& x, Edge edge, double theta,
             const NuisancePair& eta);

/// (psi_a, psi_b) with psi = psi_a * theta + psi_b.
std::pair<double, double> score_parts(const Eigen::Ref<const Eigen::RowVectorXd>& x, Edge edge,
                                      const NuisancePair& eta);

// --- estimation -------------------------------------------------------------

/// Lasso-type nuisance regressions for one edge on `data` as given (no
/// centering). The penalty uses cfg.penalty.d_total and p = data.p().
NuisancePair fit_nuisance(const Dataset& data, Edge edge, const InferenceConfig& cfg);

/// Exact root of the empirical orthogonal moment equation plus the Jacobian,
/// variance and standardized scores. Throws Errc::degenerate_jacobian when
/// |E_n[psi_a]| < 1e-12.
EdgeStat solve_theta(const Dataset& data, Edge edge, const NuisancePair& eta);

// --- bootstrap and regions --------------------------------------------------

/// B x d matrix of n^{-1/2} sum_i xi_i psi_std(i, r) for B independent draws of
/// standard normal multipliers xi.
Matrix multiplier_draws(const Matrix& psi_std, int B, Rng& rng);

/// (1 - alpha)-quantiles of sup_r |N_r| for each alpha.
std::vector<double> bootstrap_sup(const Matrix& psi_std, const std::vector<double>& alphas, int B,
                                  Rng& rng);

/// The ceil(q B)-th order statistic of `values`.
double empirical_quantile(std::vector<double> values, double q);

/// sum_{s=1..S} v_{r-s}^exp with circular indices, for every r.
Vector sparse_transform(const Vector& v, int S, int exp);

Criticals critical_values(const Matrix& draws, const RegionSpec& spec);

/// Throws Errc::spec_mismatch when `crit` was built for a different region.
RegionDecision region_decide(const std::vector<EdgeStat>& stats, Index n, const RegionSpec& spec,
                             const Criticals& crit);

// --- full procedures --------------------------------------------------------

void validate_edges(const EdgeSet& edges, Index p);

/// Nuisance fits, Z-estimation per edge, one shared multiplier bootstrap and a
/// decision for each region spec. Equivalent to cross_fit_inference with K = 1.
TestReport test_edges(const Dataset& data, const EdgeSet& edges, const InferenceConfig& cfg,
                      const std::vector<RegionSpec>& specs, const Rng& rng);

/// K-fold cross-fitted variant. Folds come from a random partition drawn from
/// rng; sizes differ by at most one when K does not divide n.
TestReport cross_fit_inference(const Dataset& data, const EdgeSet& edges, int K,
                               const InferenceConfig& cfg, const std::vector<RegionSpec>& specs,
                               const Rng& rng);

/// Same with an explicit fold label (0..K-1) per observation.
TestReport cross_fit_inference(const Dataset& data, const EdgeSet& edges,
                               const std::vector<int>& fold_of, int K, const InferenceConfig& cfg,
                               const std::vector<RegionSpec>& specs, const Rng& rng);

/// Random partition of 0..n-1 into K folds; returns the fold label of each index.
std::vector<int> random_folds(Index n, int K, Rng& rng);

} // namespace ggm
