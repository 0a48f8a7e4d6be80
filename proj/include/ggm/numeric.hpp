#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace ggm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Lower-triangular factor L with L * L^T equal to the factored matrix.
struct LowerTriangular {
    Matrix factor;
};

/// Cholesky factorization of a symmetric positive definite matrix.
/// Throws Errc::not_positive_definite when a pivot falls to 1e-12 or below.
LowerTriangular cholesky(const Matrix& m);

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations
/// (at most 100 sweeps, then Errc::non_convergence).
double min_eigenvalue(const Matrix& m);

/// All eigenvalues of a symmetric matrix, ascending.
Vector symmetric_eigenvalues(const Matrix& m);

/// Least-squares coefficients of y on the columns of X.
/// Throws Errc::rank_deficient when X does not have full column rank.
Vector solve_ols(const Vector& y, const Matrix& X);

double std_normal_cdf(double x);

/// Inverse of the standard normal CDF, accurate to about 1e-15 in probability.
/// Throws Errc::out_of_range unless 0 < q < 1.
double std_normal_quantile(double q);

/// Inverse of a symmetric positive definite matrix through its Cholesky factor.
Matrix spd_inverse(const Matrix& m);

/// Copies the rows/columns listed in `idx` out of a square matrix.
Matrix submatrix(const Matrix& m, std::span<const Index> rows, std::span<const Index> cols);

/// Column indices 0..p-1 with the listed ones removed, ascending.
std::vector<Index> complement(Index p, std::initializer_list<Index> drop);

bool is_symmetric(const Matrix& m);

} // namespace ggm
