#pragma once

#include "daereach/linear_program.hpp"
#include "daereach/reachability.hpp"

#include <optional>
#include <vector>

namespace daereach {

/// Unsafe polyhedron G x <= f.
struct UnsafeSpec {
    Matrix G;
    Vector f;
    /// G is written over the n original coordinates and zero-extended over the
    /// m input coordinates of the autonomous state.
    bool on_original_state = true;
};

enum class SafetyStatus { safe, unsafe };

struct VerificationOutcome {
    SafetyStatus status = SafetyStatus::safe;
    std::optional<int> first_unsafe_step;
    std::optional<Vector> alpha_feasible;
    /// x_j = V_j alpha_feasible for j = 0..N (autonomous state).
    std::optional<std::vector<Vector>> unsafe_trace;
    /// Every step found unsafe; filled only with report_all_unsafe_steps.
    std::vector<int> unsafe_steps;
    double seconds = 0.0;
};

struct VerifyOptions {
    /// Keep checking after the first hit (off: stop at the first feasible step).
    bool report_all_unsafe_steps = false;
    const LinearProgramSolver* solver = nullptr;
};

/// Some alpha with Gbar alpha <= fbar, or nullopt for an empty polyhedron.
std::optional<Vector> feasibility_check(const Matrix& gbar, const Vector& fbar, const TolerancePolicy& tol,
                                        const LinearProgramSolver& solver = default_lp_solver());

/// G expressed over the full autonomous state.
Matrix unsafe_matrix_over_state(const UnsafeSpec& unsafe, Index n_orig, Index dim);

/// Per-step check of [G V_j; C] alpha <= [f; d].
VerificationOutcome verify(const ReachResult& reach, const UnsafeSpec& unsafe, const TolerancePolicy& tol = {},
                           const VerifyOptions& opts = {});

/// Per-step extrema of each row of `directions` over the star.
struct DirectionBounds {
    std::vector<Vector> lower;
    std::vector<Vector> upper;
};

/// `directions` has either n_orig columns (zero-extended) or the full state dimension.
DirectionBounds direction_bounds(const ReachResult& reach, const Matrix& directions, const TolerancePolicy& tol = {},
                                 const LinearProgramSolver& solver = default_lp_solver());

}  // namespace daereach
