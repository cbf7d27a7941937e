#pragma once

#include "daereach/decoupling.hpp"
#include "daereach/errors.hpp"
#include "daereach/starset.hpp"

namespace daereach {

/// Result of checking Gamma * V(0) = 0 for an initial star.
struct ConsistencyCertificate {
    Matrix gamma;
    double max_residual = 0.0;
    bool consistent = true;
    /// Location of the largest |Gamma V(0)| entry: basis column and row block
    /// (0-based block of Gamma, one block per algebraic subsystem).
    Index worst_column = 0;
    Index worst_block = 0;
};

/// Consistent matrix Gamma, one n x n block per algebraic subsystem; its kernel
/// is the consistent space of the autonomous system.
Matrix build_consistent_matrix(const DecoupledSystem& dec);

/// Never throws for inconsistency; only for mismatched dimensions.
ConsistencyCertificate check_initial_star(const Matrix& gamma, const StarSet& theta0, const TolerancePolicy& tol);

}  // namespace daereach

namespace daereach {

/// Raised by the reachability pipeline when Gamma * V(0) != 0.
class InconsistentInitialSet : public DaeError {
public:
    explicit InconsistentInitialSet(ConsistencyCertificate cert);
    const ConsistencyCertificate& certificate() const noexcept { return cert_; }

private:
    ConsistencyCertificate cert_;
};

}  // namespace daereach
