#include "daereach/matrix_kernel.hpp"

#include "daereach/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace daereach {

namespace {

bool in_unit_interval(double v) { return v > 0.0 && v < 1.0; }

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& z)
{
    return Eigen::JacobiSVD<Matrix>(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from_singular_values(const Vector& sv, double rel_tol)
{
    if (sv.size() == 0) return 0;
    const double smax = sv.maxCoeff();
    if (smax == 0.0) return 0;
    const double cutoff = rel_tol * smax;
    return static_cast<int>((sv.array() > cutoff).count());
}

}  // namespace

void TolerancePolicy::validate() const
{
    if (!in_unit_interval(rank_rel_tol) || !in_unit_interval(zero_abs_tol) ||
        !in_unit_interval(feasibility_tol) || !in_unit_interval(consistency_tol)) {
        throw DaeError(ErrorKind::invalid_argument, "tolerances must lie strictly between 0 and 1");
    }
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_valid(const Matrix& m, std::string_view name)
{
    if (m.rows() == 0 && m.cols() == 0) {
        throw DaeError(ErrorKind::invalid_argument, "matrix '" + std::string(name) + "' is empty");
    }
    if (!m.allFinite()) {
        throw DaeError(ErrorKind::invalid_argument,
                       "matrix '" + std::string(name) + "' has non-finite entries");
    }
}

int numerical_rank(const Matrix& z, const TolerancePolicy& tol)
{
    if (z.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(z);
    return rank_from_singular_values(svd.singularValues(), tol.rank_rel_tol);
}

Matrix null_space_basis(const Matrix& z, const TolerancePolicy& tol)
{
    const Index n = z.cols();
    if (z.rows() == 0) return Matrix::Identity(n, n);
    const auto svd = full_svd(z);
    const int r = rank_from_singular_values(svd.singularValues(), tol.rank_rel_tol);
    return svd.matrixV().rightCols(n - r);
}

Matrix orthogonal_null_projector(const Matrix& z, const TolerancePolicy& tol)
{
    if (z.rows() != z.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch, "orthogonal_null_projector needs a square matrix");
    }
    const Matrix k2 = null_space_basis(z, tol);
    return k2 * k2.transpose();
}

Matrix matrix_exponential(const Matrix& m, double t)
{
    if (m.rows() != m.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch, "matrix_exponential needs a square matrix");
    }
    if (t == 0.0) return Matrix::Identity(m.rows(), m.cols());
    const Matrix scaled = m * t;
    return scaled.exp();
}

Matrix solve_inverse(const Matrix& m, const TolerancePolicy& tol)
{
    if (m.rows() != m.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch, "solve_inverse needs a square matrix");
    }
    const Index n = m.rows();
    if (numerical_rank(m, tol) < n) {
        throw DaeError(ErrorKind::singular_matrix,
                       "matrix of size " + std::to_string(n) + " is singular at the rank tolerance");
    }
    Eigen::FullPivLU<Matrix> lu(m);
    return lu.solve(Matrix::Identity(n, n));
}

double scaled_residual(const Matrix& a, const Matrix& b, double scale)
{
    return (a - b).norm() / std::max(1.0, scale);
}

}  // namespace daereach
