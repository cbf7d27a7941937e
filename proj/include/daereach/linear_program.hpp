#pragma once

#include "daereach/matrix_kernel.hpp"

#include <optional>

namespace daereach {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Vector x;
    double objective = 0.0;
};

/// minimize c^T x  subject to  G x <= f,  x free.
///
/// Implementations must be deterministic for fixed inputs and throw
/// DaeError(numerical_failure) when they cannot decide (as opposed to
/// reporting infeasibility).
class LinearProgramSolver {
public:
    virtual ~LinearProgramSolver() = default;
    virtual LpResult minimize(const Matrix& g, const Vector& f, const Vector& c,
                              const TolerancePolicy& tol) const = 0;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule. Rows are
/// scaled to unit max-norm before pivoting; a point is accepted when every
/// scaled constraint holds within feasibility_tol.
class SimplexSolver final : public LinearProgramSolver {
public:
    explicit SimplexSolver(int max_iterations = 100000) : max_iterations_(max_iterations) {}

    LpResult minimize(const Matrix& g, const Vector& f, const Vector& c,
                      const TolerancePolicy& tol) const override;

private:
    int max_iterations_;
};

const LinearProgramSolver& default_lp_solver();

/// Some x with G x <= f (within tolerance), or nullopt when the polyhedron is empty.
std::optional<Vector> find_feasible_point(const Matrix& g, const Vector& f, const TolerancePolicy& tol,
                                          const LinearProgramSolver& solver = default_lp_solver());

}  // namespace daereach
