#include "daereach/safety.hpp"

#include "daereach/errors.hpp"

#include <chrono>
#include <limits>
#include <string>

namespace daereach {

std::optional<Vector> feasibility_check(const Matrix& gbar, const Vector& fbar, const TolerancePolicy& tol,
                                        const LinearProgramSolver& solver)
{
    if (gbar.rows() != fbar.size()) {
        throw DaeError(ErrorKind::dimension_mismatch, "feasibility check: row counts of G and f differ");
    }
    return find_feasible_point(gbar, fbar, tol, solver);
}

Matrix unsafe_matrix_over_state(const UnsafeSpec& unsafe, Index n_orig, Index dim)
{
    if (unsafe.G.rows() < 1) throw DaeError(ErrorKind::invalid_argument, "unsafe set needs at least one constraint");
    if (unsafe.G.rows() != unsafe.f.size()) {
        throw DaeError(ErrorKind::dimension_mismatch, "unsafe G and f row counts differ");
    }
    const Index expected = unsafe.on_original_state ? n_orig : dim;
    if (unsafe.G.cols() != expected) {
        throw DaeError(ErrorKind::dimension_mismatch, "unsafe G must have " + std::to_string(expected) + " columns");
    }
    if (!unsafe.on_original_state) return unsafe.G;
    Matrix g = Matrix::Zero(unsafe.G.rows(), dim);
    g.leftCols(n_orig) = unsafe.G;
    return g;
}

VerificationOutcome verify(const ReachResult& reach, const UnsafeSpec& unsafe, const TolerancePolicy& tol,
                           const VerifyOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    const LinearProgramSolver& solver = opts.solver ? *opts.solver : default_lp_solver();
    VerificationOutcome out;
    if (reach.stars.empty()) return out;

    const Index dim = reach.stars.front().dim();
    const Matrix g = unsafe_matrix_over_state(unsafe, reach.n_orig, dim);
    const Matrix& c = reach.stars.front().C();
    const Vector& d = reach.stars.front().d();
    const Index q = g.rows();
    const Index p = c.rows();

    Matrix gbar(q + p, c.cols());
    Vector fbar(q + p);
    gbar.bottomRows(p) = c;
    fbar << unsafe.f, d;

    for (std::size_t j = 0; j < reach.stars.size(); ++j) {
        gbar.topRows(q) = g * reach.stars[j].basis();
        std::optional<Vector> alpha;
        try {
            alpha = feasibility_check(gbar, fbar, tol, solver);
        } catch (const DaeError& e) {
            if (e.kind() != ErrorKind::numerical_failure) throw;
            throw DaeError(ErrorKind::numerical_failure,
                           std::string(e.what()) + " (at step " + std::to_string(j) + ")");
        }
        if (!alpha) continue;
        if (!out.first_unsafe_step) {
            out.status = SafetyStatus::unsafe;
            out.first_unsafe_step = static_cast<int>(j);
            out.alpha_feasible = std::move(*alpha);
        }
        out.unsafe_steps.push_back(static_cast<int>(j));
        if (!opts.report_all_unsafe_steps) break;
    }

    if (out.status == SafetyStatus::unsafe) {
        std::vector<Vector> trace;
        trace.reserve(reach.stars.size());
        for (const StarSet& s : reach.stars) trace.push_back(s.basis() * *out.alpha_feasible);
        out.unsafe_trace = std::move(trace);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

DirectionBounds direction_bounds(const ReachResult& reach, const Matrix& directions, const TolerancePolicy& tol,
                                 const LinearProgramSolver& solver)
{
    DirectionBounds out;
    if (reach.stars.empty()) return out;
    const Index dim = reach.stars.front().dim();
    Matrix dirs;
    if (directions.cols() == dim) {
        dirs = directions;
    } else if (directions.cols() == reach.n_orig) {
        dirs = Matrix::Zero(directions.rows(), dim);
        dirs.leftCols(reach.n_orig) = directions;
    } else {
        throw DaeError(ErrorKind::dimension_mismatch, "direction matrix column count matches neither state space");
    }

    const Matrix& c = reach.stars.front().C();
    const Vector& d = reach.stars.front().d();
    for (const StarSet& s : reach.stars) {
        const Matrix dv = dirs * s.basis();
        Vector lo(dirs.rows());
        Vector hi(dirs.rows());
        for (Index r = 0; r < dirs.rows(); ++r) {
            const Vector obj = dv.row(r).transpose();
            const LpResult low = solver.minimize(c, d, obj, tol);
            const LpResult high = solver.minimize(c, d, -obj, tol);
            lo(r) = low.status == LpStatus::optimal ? low.objective : -std::numeric_limits<double>::infinity();
            hi(r) = high.status == LpStatus::optimal ? -high.objective : std::numeric_limits<double>::infinity();
        }
        out.lower.push_back(std::move(lo));
        out.upper.push_back(std::move(hi));
    }
    return out;
}

}  // namespace daereach
