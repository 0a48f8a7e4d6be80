#pragma once

#include "ggm/numeric.hpp"
#include "ggm/rng.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace ggm {

/// Unordered node pair stored with j > k. Indices are 0-based; text formats
/// and reports use 1-based numbering.
struct Edge {
    Index j = 1;
    Index k = 0;

    /// Normalizes (a, b) to j > k. Throws Errc::invalid_argument on a self-loop.
    static Edge of(Index a, Index b);

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSet = std::vector<Edge>;

/// Symmetric weight matrix with exactly zero diagonal.
struct Adjacency {
    Matrix entries;

    Index order() const { return entries.rows(); }
};

struct PrecisionModel {
    Adjacency adjacency;
    Matrix phi_pre; ///< v*A + (|lambda_min(v*A)| + 0.1 + u) * I
    Matrix sigma;   ///< unit-diagonal covariance
    Matrix phi;     ///< sigma^{-1}
    EdgeSet true_edges;
    double v = 0.3;
    double u = 0.1;

    Index order() const { return sigma.rows(); }
};

struct Dataset {
    Matrix values; ///< n x p, one observation per row
    std::vector<std::string> names;

    Index n() const { return values.rows(); }
    Index p() const { return values.cols(); }
};

enum class Design { random, cluster, approx, independent };

std::string_view to_string(Design d);
Design parse_design(std::string_view s);

/// Exact-sparse random graph over the first p-1 nodes; node p stays isolated.
/// One uniform draw per pair, pairs visited in lexicographic order.
Adjacency random_graph(Index p, double prob, Rng& rng);

/// Random graph restricted to g equal contiguous groups.
Adjacency cluster_graph(Index p, Index g, double prob, Rng& rng);

/// random_graph pattern (same draws) with every other entry of the leading
/// (p-1) block drawn from U[-a, a]. Node p stays isolated.
Adjacency approx_graph(Index p, double prob, double a, Rng& rng);

PrecisionModel identity_graph(Index p);

PrecisionModel build_precision(const Adjacency& adj, double v = 0.3, double u = 0.1);

/// n i.i.d. rows from N(0, sigma) through the Cholesky factor of sigma.
Dataset sample_mvn(const PrecisionModel& model, Index n, Rng& rng);

struct DesignParams {
    double prob = -1.0; ///< negative means 5/p
    Index groups = 4;
    double a = 1.0 / 20.0;
    double v = 0.3;
    double u = 0.1;
};

/// Builds one of the four simulation designs.
PrecisionModel make_model(Design design, Index p, const DesignParams& params, Rng& rng);

/// Pairs with |phi(j,k)| > 1e-10.
EdgeSet support_edges(const Matrix& phi);

std::vector<std::string> default_names(Index p);

} // namespace ggm
