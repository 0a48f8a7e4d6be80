#include "ggm/numeric.hpp"
#include "ggm/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ggm {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::not_positive_definite: return "NotPositiveDefinite";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::invalid_prob: return "InvalidProb";
    case Errc::invalid_partition: return "InvalidPartition";
    case Errc::singular_precision: return "SingularPrecision";
    case Errc::invalid_gamma: return "InvalidGamma";
    case Errc::degenerate_loading: return "DegenerateLoading";
    case Errc::degenerate_jacobian: return "DegenerateJacobian";
    case Errc::spec_mismatch: return "SpecMismatch";
    case Errc::fold_too_small: return "FoldTooSmall";
    case Errc::incompatible_p: return "IncompatibleP";
    case Errc::null_violated: return "NullViolated";
    }
    return "Unknown";
}

bool is_numerical(Errc code) noexcept {
    switch (code) {
    case Errc::not_positive_definite:
    case Errc::non_convergence:
    case Errc::rank_deficient:
    case Errc::singular_precision:
    case Errc::degenerate_loading:
    case Errc::degenerate_jacobian:
    case Errc::null_violated:
        return true;
    default:
        return false;
    }
}

bool is_symmetric(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

LowerTriangular cholesky(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(Errc::invalid_argument, "cholesky needs a non-empty square matrix");
    const Index p = m.rows();
    Matrix L = Matrix::Zero(p, p);
    for (Index j = 0; j < p; ++j) {
        double pivot = m(j, j);
        for (Index k = 0; k < j; ++k) pivot -= L(j, k) * L(j, k);
        if (!(pivot > 1e-12))
            throw Error(Errc::not_positive_definite,
                        "pivot " + std::to_string(j) + " is " + std::to_string(pivot));
        const double d = std::sqrt(pivot);
        L(j, j) = d;
        for (Index i = j + 1; i < p; ++i) {
            double s = m(i, j);
            for (Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / d;
        }
    }
    return {std::move(L)};
}

Vector symmetric_eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(Errc::invalid_argument, "eigenvalues need a non-empty square matrix");
    const Index p = m.rows();
    Matrix a = m;
    constexpr int max_sweeps = 100;
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Index i = 0; i < p; ++i)
            for (Index j = i + 1; j < p; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) <= 1e-15 * scale) {
            Vector ev = a.diagonal();
            std::sort(ev.data(), ev.data() + p);
            return ev;
        }
        for (Index i = 0; i < p; ++i) {
            for (Index j = i + 1; j < p; ++j) {
                const double aij = a(i, j);
                if (aij == 0.0) continue;
                const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Index k = 0; k < p; ++k) {
                    const double aki = a(k, i);
                    const double akj = a(k, j);
                    a(k, i) = c * aki - s * akj;
                    a(k, j) = s * aki + c * akj;
                }
                for (Index k = 0; k < p; ++k) {
                    const double aik = a(i, k);
                    const double ajk = a(j, k);
                    a(i, k) = c * aik - s * ajk;
                    a(j, k) = s * aik + c * ajk;
                }
                a(i, j) = 0.0;
                a(j, i) = 0.0;
            }
        }
    }
    throw Error(Errc::non_convergence, "Jacobi rotations did not converge in 100 sweeps");
}

double min_eigenvalue(const Matrix& m) { return symmetric_eigenvalues(m)(0); }

Vector solve_ols(const Vector& y, const Matrix& X) {
    if (X.rows() != y.size())
        throw Error(Errc::invalid_argument, "solve_ols: rows(X) != len(y)");
    if (X.cols() == 0) return Vector(0);
    Eigen::ColPivHouseholderQR<Matrix> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols())
        throw Error(Errc::rank_deficient, "design has rank " + std::to_string(qr.rank()) +
                                              " < " + std::to_string(X.cols()) + " columns");
    return qr.solve(y);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw Error(Errc::out_of_range, "normal quantile needs 0 < q < 1, got " + std::to_string(q));

    // Acklam's rational approximation (relative error ~1.15e-9) ...
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (q < p_low) {
        const double r = std::sqrt(-2.0 * std::log(q));
        x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    } else if (q <= 1.0 - p_low) {
        const double s = q - 0.5;
        const double r = s * s;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * s /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double r = std::sqrt(-2.0 * std::log1p(-q));
        x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    }

    // ... refined by one Halley step on the CDF. The error term is taken in
    // whichever tail is smaller to avoid cancellation.
    const double e = q <= 0.5 ? 0.5 * std::erfc(-x / std::numbers::sqrt2) - q
                              : (1.0 - q) - 0.5 * std::erfc(x / std::numbers::sqrt2);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

Matrix spd_inverse(const Matrix& m) {
    const LowerTriangular chol = cholesky(m);
    const Index p = m.rows();
    const auto L = chol.factor.triangularView<Eigen::Lower>();
    Matrix inv = L.solve(Matrix::Identity(p, p));
    inv = L.transpose().solve(inv);
    // Exact symmetry of the stored result.
    return (0.5 * (inv + inv.transpose())).eval();
}

Matrix submatrix(const Matrix& m, std::span<const Index> rows, std::span<const Index> cols) {
    Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows.size(); ++i)
            out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
    return out;
}

std::vector<Index> complement(Index p, std::initializer_list<Index> drop) {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) {
        bool skip = false;
        for (Index d : drop) skip = skip || d == i;
        if (!skip) out.push_back(i);
    }
    return out;
}

} // namespace ggm
