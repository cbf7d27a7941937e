#pragma once

#include "daereach/consistency.hpp"
#include "daereach/decoupling.hpp"
#include "daereach/model.hpp"
#include "daereach/starset.hpp"

#include <vector>

namespace daereach {

enum class PropagationMode {
    transition_matrix,    ///< one e^{N1 h}, reused every step
    adaptive_integrator,  ///< Dormand-Prince 5(4) per basis column
};

struct ReachSettings {
    double time_step = 0.01;
    int num_steps = 1000;
    PropagationMode mode = PropagationMode::transition_matrix;
    double abs_tol = 1e-12;
    double rel_tol = 1e-8;

    void validate() const;
    double time_bound() const { return time_step * num_steps; }
};

/// Wall-clock seconds per phase.
struct PhaseTimings {
    double decoupling = 0.0;
    double consistency = 0.0;
    double reach = 0.0;
};

struct ReachResult {
    /// Theta(0 h) .. Theta(N h) over the autonomous state, all sharing the
    /// predicate of the initial star.
    std::vector<StarSet> stars;
    Matrix psi;
    std::vector<Matrix> ode_basis;
    DecoupledSystem decoupled;
    ConsistencyCertificate certificate;
    ReachSettings settings;
    Index n_orig = 0;
    Index m_orig = 0;
    PhaseTimings timings;
};

/// Reachable-set projector mapping the ODE-subsystem state to the full state:
///   index 1: I + N2
///   index 2: I + N2 + N3 + L3 N2 N1
///   index 3: I + N2 + N3 + N4 + L3 N2 N1 + L4 N3 N1 + L4 L3 N2 N1^2 + Z4 N2 N1
Matrix build_psi(const DecoupledSystem& dec);

/// V1(j h) for j = 0..N starting from the ODE-subsystem basis V1(0).
std::vector<Matrix> propagate_basis(const DecoupledSystem& dec, const Matrix& ode_basis0,
                                    const ReachSettings& settings);
std::vector<Matrix> propagate_basis(const DecoupledSystem& dec, const StarSet& theta1_0,
                                    const ReachSettings& settings);

/// Decouple, check Gamma V(0) = 0 (throws InconsistentInitialSet), project
/// onto the ODE subsystem, propagate, and lift every step through Psi.
ReachResult compute_reach(const AutonomousDae& sys, const StarSet& theta0, const ReachSettings& settings,
                          const TolerancePolicy& tol = {});

}  // namespace daereach
