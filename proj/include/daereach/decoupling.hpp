#pragma once

#include "daereach/matrix_kernel.hpp"
#include "daereach/model.hpp"

#include <map>
#include <optional>
#include <vector>

namespace daereach {

/// Matrix chain E_{j+1} = E_j - A_j Q_j, A_{j+1} = A_j P_j.
///
/// E and A hold mu + 1 entries (E_0 .. E_mu), Q and P hold mu entries
/// (Q_0 .. Q_{mu-1}). E_mu is nonsingular, E_j for j < mu is singular.
struct MatrixChain {
    int mu = 0;
    std::vector<Matrix> E;
    std::vector<Matrix> A;
    std::vector<Matrix> Q;
    std::vector<Matrix> P;

    Index dim() const { return E.empty() ? 0 : E.front().rows(); }
};

/// Builds the chain with orthogonal kernel projectors until E_j becomes
/// nonsingular. Throws nonsingular_e when E_0 is already nonsingular,
/// index_too_high when E_3 is still singular, irregular_pencil when the
/// regularity pre-check fails.
MatrixChain compute_index_and_chain(const AutonomousDae& sys, const TolerancePolicy& tol);

/// Replaces the orthogonal projectors by admissible ones (Q_j Q_i = 0 for j > i)
/// and rebuilds E_j, A_j from them. Index 1 is returned unchanged.
MatrixChain make_admissible(const MatrixChain& chain, const TolerancePolicy& tol);

/// One ODE subsystem plus mu algebraic-constraint subsystems.
///
/// Subsystem ids run from 1 (the ODE part) to mu + 1. For index 2:
///   x1 = P0 P1 x,  x2 = P0 Q1 x,  x3 = Q0 x
/// For index 3:
///   x1 = P0 P1 P2 x, x2 = P0 P1 Q2 x, x3 = P0 Q1 x, x4 = Q0 x
struct DecoupledSystem {
    int mu = 0;
    std::map<int, Matrix> N;
    std::map<int, Matrix> M;
    std::optional<Matrix> L3;
    std::optional<Matrix> L4;
    std::optional<Matrix> Z4;
    std::map<int, Matrix> subsystem_projectors;
    MatrixChain raw_chain;
    MatrixChain chain;

    Index dim() const { return chain.dim(); }
    const Matrix& ode_projector() const { return subsystem_projectors.at(1); }
};

/// Closed-form coefficients for an admissible chain. `b` is the input matrix
/// (n x m, may have zero columns) used for the M_i coefficients.
DecoupledSystem decouple(const MatrixChain& admissible, const Matrix& b, const TolerancePolicy& tol);
DecoupledSystem decouple(const MatrixChain& admissible, const TolerancePolicy& tol);

/// Regularity check, chain, admissible projectors and decoupling in one call.
DecoupledSystem decouple_system(const AutonomousDae& sys, const TolerancePolicy& tol);

}  // namespace daereach
