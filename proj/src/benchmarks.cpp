#include "daereach/benchmarks.hpp"

#include "daereach/consistency.hpp"
#include "daereach/errors.hpp"

#include <cmath>
#include <random>

namespace daereach {

namespace {

Matrix rotating_masses_basis()
{
    const double a = 1.0 / std::sqrt(95.0);
    const double b = 1.0 / std::sqrt(5.0);
    Matrix v(6, 2);
    v << 0, 0,
         0, 0,
         5 * a, 0,
         -5 * a, 0,
         -6 * a, b,
         3 * a, 2 * b;
    return v;
}

StarSet rotating_masses_star(Matrix basis)
{
    Matrix c(4, 2);
    c << 1, 0,
         -1, 0,
         0, 1,
         0, -1;
    Vector d(4);
    d << 0.2, -0.1, 1.2, -1.0;
    return StarSet(std::move(basis), std::move(c), std::move(d));
}

}  // namespace

StarSet rotating_masses_initial_star() { return rotating_masses_star(rotating_masses_basis()); }

Matrix rotating_masses_rounded_basis()
{
    Matrix v(6, 2);
    v << 0, 0,
         0, 0,
         0.513, 0,
         -0.513, 0,
         -0.616, 0.447,
         0.308, 0.894;
    return v;
}

UnsafeSpec rotating_masses_unsafe_m2()
{
    UnsafeSpec s;
    s.G = Matrix::Zero(1, 4);
    s.G(0, 2) = 1.0;
    s.f = Vector::Constant(1, -0.9);
    return s;
}

UnsafeSpec rotating_masses_unsafe_x4()
{
    UnsafeSpec s;
    s.G = Matrix::Zero(1, 4);
    s.G(0, 3) = 1.0;
    s.f = Vector::Constant(1, -1.0);
    return s;
}

StarSet consistent_random_star(const DecoupledSystem& dec, int k, std::uint64_t seed, const TolerancePolicy& tol)
{
    if (k < 1) throw DaeError(ErrorKind::invalid_argument, "need at least one basis column");
    const Matrix gamma = build_consistent_matrix(dec);
    const Matrix kernel = null_space_basis(gamma, tol);
    if (kernel.cols() == 0) throw DaeError(ErrorKind::numerical_failure, "consistent space is trivial");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix raw(dec.dim(), k);
    for (Index j = 0; j < raw.cols(); ++j)
        for (Index i = 0; i < raw.rows(); ++i) raw(i, j) = normal(rng);
    Matrix basis = kernel * (kernel.transpose() * raw);
    return StarSet::box(std::move(basis), Vector::Zero(k), Vector::Ones(k), tol);
}

}  // namespace daereach
