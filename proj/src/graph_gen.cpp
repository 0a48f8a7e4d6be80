#include "ggm/graph_gen.hpp"
#include "ggm/error.hpp"

#include <algorithm>
#include <cmath>

namespace ggm {

Edge Edge::of(Index a, Index b) {
    if (a == b) throw Error(Errc::invalid_argument, "self-loop not a valid edge");
    if (a < 0 || b < 0) throw Error(Errc::invalid_argument, "negative node index");
    return a > b ? Edge{a, b} : Edge{b, a};
}

std::string_view to_string(Design d) {
    switch (d) {
    case Design::random: return "random";
    case Design::cluster: return "cluster";
    case Design::approx: return "approx";
    case Design::independent: return "independent";
    }
    return "?";
}

Design parse_design(std::string_view s) {
    if (s == "random") return Design::random;
    if (s == "cluster") return Design::cluster;
    if (s == "approx") return Design::approx;
    if (s == "independent" || s == "identity") return Design::independent;
    throw Error(Errc::invalid_argument, "unknown design '" + std::string(s) + "'");
}

namespace {

void check_prob(double prob) {
    if (!(prob >= 0.0 && prob <= 1.0))
        throw Error(Errc::invalid_prob, "edge probability must lie in [0,1]");
}

} // namespace

Adjacency random_graph(Index p, double prob, Rng& rng) {
    if (p < 3) throw Error(Errc::invalid_argument, "random graph needs p >= 3");
    check_prob(prob);
    Matrix a = Matrix::Zero(p, p);
    for (Index i = 0; i < p - 1; ++i)
        for (Index j = i + 1; j < p - 1; ++j)
            if (rng.uniform() < prob) a(i, j) = a(j, i) = 1.0;
    return {std::move(a)};
}

Adjacency cluster_graph(Index p, Index g, double prob, Rng& rng) {
    if (g < 1 || p < 1 || p % g != 0)
        throw Error(Errc::invalid_partition,
                    std::to_string(g) + " groups do not divide p = " + std::to_string(p));
    check_prob(prob);
    const Index size = p / g;
    Matrix a = Matrix::Zero(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = i + 1; j < p; ++j)
            if (i / size == j / size && rng.uniform() < prob) a(i, j) = a(j, i) = 1.0;
    return {std::move(a)};
}

Adjacency approx_graph(Index p, double prob, double a, Rng& rng) {
    if (!(a >= 0.0)) throw Error(Errc::invalid_argument, "noise half-width a must be >= 0");
    Adjacency adj = random_graph(p, prob, rng);
    Matrix& m = adj.entries;
    for (Index i = 0; i < p - 1; ++i)
        for (Index j = i + 1; j < p - 1; ++j)
            if (m(i, j) == 0.0) m(i, j) = m(j, i) = rng.uniform(-a, a);
    return adj;
}

PrecisionModel identity_graph(Index p) {
    if (p < 2) throw Error(Errc::invalid_argument, "identity graph needs p >= 2");
    PrecisionModel model;
    model.adjacency.entries = Matrix::Zero(p, p);
    model.phi_pre = Matrix::Identity(p, p);
    model.sigma = Matrix::Identity(p, p);
    model.phi = Matrix::Identity(p, p);
    return model;
}

EdgeSet support_edges(const Matrix& phi) {
    EdgeSet edges;
    for (Index j = 0; j < phi.rows(); ++j)
        for (Index k = 0; k < j; ++k)
            if (std::abs(phi(j, k)) > 1e-10) edges.push_back({j, k});
    return edges;
}

PrecisionModel build_precision(const Adjacency& adj, double v, double u) {
    const Matrix& a = adj.entries;
    if (a.rows() != a.cols() || a.rows() == 0)
        throw Error(Errc::invalid_argument, "adjacency must be square and non-empty");
    if (!is_symmetric(a)) throw Error(Errc::invalid_argument, "adjacency must be symmetric");
    for (Index i = 0; i < a.rows(); ++i)
        if (a(i, i) != 0.0) throw Error(Errc::invalid_argument, "adjacency diagonal must be zero");

    const Index p = a.rows();
    PrecisionModel model;
    model.adjacency = adj;
    model.v = v;
    model.u = u;

    const Matrix va = v * a;
    const double shift = std::abs(min_eigenvalue(va)) + 0.1 + u;
    model.phi_pre = va + shift * Matrix::Identity(p, p);

    Matrix cov;
    try {
        cov = spd_inverse(model.phi_pre);
    } catch (const Error& e) {
        throw Error(Errc::singular_precision, e.what());
    }
    const Vector scale = cov.diagonal().cwiseSqrt();
    model.sigma = scale.cwiseInverse().asDiagonal() * cov * scale.cwiseInverse().asDiagonal();
    model.sigma.diagonal().setOnes();
    // sigma = D^{-1/2} phi_pre^{-1} D^{-1/2}  =>  sigma^{-1} = D^{1/2} phi_pre D^{1/2}.
    model.phi = scale.asDiagonal() * model.phi_pre * scale.asDiagonal();
    model.true_edges = support_edges(model.phi);
    return model;
}

std::vector<std::string> default_names(Index p) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) names.push_back("X" + std::to_string(i + 1));
    return names;
}

Dataset sample_mvn(const PrecisionModel& model, Index n, Rng& rng) {
    if (n < 2) throw Error(Errc::invalid_argument, "need at least 2 observations");
    const Index p = model.order();
    const Matrix L = cholesky(model.sigma).factor;
    Matrix z(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) z(i, j) = rng.normal();
    Dataset data;
    data.values = z * L.transpose();
    data.names = default_names(p);
    return data;
}

PrecisionModel make_model(Design design, Index p, const DesignParams& params, Rng& rng) {
    const double prob =
        params.prob < 0.0 ? std::min(1.0, 5.0 / static_cast<double>(p)) : params.prob;
    switch (design) {
    case Design::random:
        return build_precision(random_graph(p, prob, rng), params.v, params.u);
    case Design::cluster:
        return build_precision(cluster_graph(p, params.groups, prob, rng), params.v, params.u);
    case Design::approx:
        return build_precision(approx_graph(p, prob, params.a, rng), params.v, params.u);
    case Design::independent:
        return identity_graph(p);
    }
    throw Error(Errc::invalid_argument, "unknown design");
}

} // namespace ggm
