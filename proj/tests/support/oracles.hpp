#pragma once

#include "daereach/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using daereach::Index;
using daereach::Matrix;
using daereach::Vector;

/// Pencil in disguised Weierstrass form:
///   E = S diag(I_d, N) T,  A = S diag(J, I) T
/// with N nilpotent. Consistent states are T^{-1} [y; 0] and the exact flow is
/// x(t) = T^{-1} [e^{Jt} y0; 0].
struct StructuredDae {
    daereach::AutonomousDae sys;
    Matrix S;
    Matrix T;
    Matrix J;
    Index d = 0;
    int nilpotency = 0;

    /// Basis of the consistent space, dim x d.
    Matrix consistent_basis() const;
    /// Exact state at time t from the consistent x0.
    Vector exact_flow(const Vector& x0, double t) const;
};

/// `blocks` are the sizes of the nilpotent Jordan blocks; the tractability
/// index equals the largest one. J is shifted so its spectrum stays near the
/// imaginary axis.
StructuredDae random_structured_dae(Index d, const std::vector<int>& blocks, std::mt19937_64& rng);

/// Random index-mu instance with total dimension in [lo, hi].
StructuredDae random_dae_of_index(int mu, Index lo, Index hi, std::mt19937_64& rng);

Matrix random_orthogonal(Index n, std::mt19937_64& rng);
Matrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng);

/// Three-stage Radau IIA on E x' = A x, stiffly accurate, `substeps` per h.
/// Returns x(0), x(h), ..., x(N h).
std::vector<Vector> radau_iia(const Matrix& e, const Matrix& a, const Vector& x0, double h, int num_steps,
                              int substeps = 4);

/// e^{M t} by Taylor summation in long double with scaling and squaring.
Matrix series_expm(const Matrix& m, double t);

/// Brute-force feasibility of G x <= f by enumerating all k-row vertex systems
/// (G must have full column rank for this to be exact).
bool vertex_feasible(const Matrix& g, const Vector& f, double tol);

/// Corners and a regular interior grid of the box lo <= alpha <= hi, at least
/// `min_points` in total.
std::vector<Vector> box_grid(const Vector& lo, const Vector& hi, int min_points);

/// Max-abs entry of a - b divided by max(1, max-abs of b).
double rel_max_diff(const Matrix& a, const Matrix& b);

}  // namespace oracle
