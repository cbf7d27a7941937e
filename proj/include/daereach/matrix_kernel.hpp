#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace daereach {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every stage of the pipeline.
struct TolerancePolicy {
    /// Singular values at or below rank_rel_tol * sigma_max count as zero.
    double rank_rel_tol = 1e-9;
    /// Absolute threshold for "this matrix identity holds".
    double zero_abs_tol = 1e-8;
    /// Constraint slack accepted from the LP kernel.
    double feasibility_tol = 1e-9;
    /// Max-norm bound on Gamma * V(0) for an initial star to count as consistent.
    double consistency_tol = 1e-8;

    /// Throws DaeError(invalid_argument) unless every field lies in (0, 1).
    void validate() const;
};

/// Rejects empty (0x0) and non-finite matrices at ingest boundaries.
void require_valid(const Matrix& m, std::string_view name);
bool all_finite(const Matrix& m);

int numerical_rank(const Matrix& z, const TolerancePolicy& tol);

/// Orthonormal basis of the right null space of z (possibly zero columns).
Matrix null_space_basis(const Matrix& z, const TolerancePolicy& tol);

/// Q = K2 * K2^T where the columns of K2 are the right singular vectors of z
/// belonging to zero singular values. Returns the zero matrix when z is
/// nonsingular. The result is stored as computed.
Matrix orthogonal_null_projector(const Matrix& z, const TolerancePolicy& tol);

/// e^{m t} by scaling and squaring with a Pade approximant. t == 0 gives I exactly.
Matrix matrix_exponential(const Matrix& m, double t);

/// Inverse of a square matrix, or DaeError(singular_matrix) when its numerical
/// rank is deficient.
Matrix solve_inverse(const Matrix& m, const TolerancePolicy& tol);

/// Frobenius norm of (a - b) scaled for identity checks: ||a - b|| / max(1, scale).
double scaled_residual(const Matrix& a, const Matrix& b, double scale);

}  // namespace daereach
