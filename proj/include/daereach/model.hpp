#pragma once

#include "daereach/matrix_kernel.hpp"

#include <cstdint>
#include <optional>

namespace daereach {

/// Linear DAE  E x' = A x + B u  with singular E.
class DaeSystem {
public:
    /// Validates shapes, finiteness and singularity of E. A nonsingular E is an
    /// ODE and is rejected with ErrorKind::nonsingular_e. B may have zero columns.
    DaeSystem(Matrix e, Matrix a, Matrix b, const TolerancePolicy& tol = {});

    const Matrix& E() const noexcept { return e_; }
    const Matrix& A() const noexcept { return a_; }
    const Matrix& B() const noexcept { return b_; }
    Index n() const noexcept { return e_.rows(); }
    Index m() const noexcept { return b_.cols(); }

private:
    Matrix e_;
    Matrix a_;
    Matrix b_;
};

/// Smooth input class u' = A_u u. The empty variant means u(t) = 0.
struct InputModel {
    std::optional<Matrix> input_dynamics;

    static InputModel none() { return {}; }
    static InputModel dynamics(Matrix a_u) { return {std::move(a_u)}; }
    bool has_inputs() const noexcept { return input_dynamics.has_value(); }
};

/// Autonomous pencil  E x' = A x  over the lifted state [x; u].
struct AutonomousDae {
    Matrix E;
    Matrix A;
    Index n_orig = 0;
    Index m_orig = 0;

    Index dim() const noexcept { return E.rows(); }

    /// Wraps a square pencil directly (no lifting); checks shapes and finiteness only.
    static AutonomousDae from_pencil(Matrix e, Matrix a);
};

/// E_bar = [[E, 0], [0, I_m]], A_bar = [[A, B], [0, A_u]]. With the empty input
/// variant the system is taken as is and B is dropped (m = 0).
AutonomousDae to_autonomous(const DaeSystem& sys, const InputModel& inputs);

/// Original state selector [I_n 0] for an autonomous lift.
Matrix original_state_selector(const AutonomousDae& sys);

struct RegularityOptions {
    int trials = 5;
    std::uint64_t seed = 0x5EED;
    double sample_low = -10.0;
    double sample_high = 10.0;
};

/// Probabilistic test that det(sE - A) is not identically zero: the pencil is
/// sampled at `trials` random real s and declared regular when sE - A has full
/// numerical rank at any sample.
bool check_regularity(const AutonomousDae& sys, const TolerancePolicy& tol = {},
                      const RegularityOptions& opts = {});

struct Benchmark {
    DaeSystem system;
    InputModel inputs;
};

/// Interconnected rotating masses, J1 = 1, J2 = 2, driven by sine inputs.
/// State (z1, z2, M2, M3), inputs (M1, M4).
Benchmark build_rotating_masses();

/// Unknown layout of the MAC Stokes discretisation on a k x k grid.
struct StokesLayout {
    int grid_n = 0;
    Index n_u = 0;         ///< x-velocities on interior vertical faces, (k-1)*k
    Index n_v = 0;         ///< y-velocities on interior horizontal faces, k*(k-1)
    Index n_velocity = 0;  ///< n_u + n_v
    Index n_pressure = 0;  ///< k*k - 1 (last cell pinned)
    Index n = 0;           ///< n_velocity + n_pressure
    Index center_u = 0;    ///< state index of the x-velocity next to the central cell
    Index center_v = 0;    ///< state index of the y-velocity next to the central cell

    Index u_index(int face_i, int cell_j) const;  // face_i in [1, k-1], cell_j in [0, k-1]
    Index v_index(int cell_i, int face_j) const;  // cell_i in [0, k-1], face_j in [1, k-1]
    Index p_index(int cell_i, int cell_j) const;  // -1 for the pinned cell
};

StokesLayout stokes_layout(int grid_n);

/// Index-2 semidiscretised Stokes flow on the unit square with no-slip walls:
/// E = blockdiag(I, 0), A = [[L, G], [G^T, 0]] with L the 5-point Laplacian and
/// G the discrete gradient. B applies one force at the central cell (m = 1).
DaeSystem build_stokes(int grid_n);

}  // namespace daereach
