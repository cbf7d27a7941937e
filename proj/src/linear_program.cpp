#include "daereach/linear_program.hpp"

#include "daereach/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace daereach {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

// Tableau rows are B^{-1} [A | b]; the last column holds the right-hand side.
class Tableau {
public:
    Tableau(Matrix t, std::vector<Index> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

    Index rows() const { return t_.rows(); }
    Index rhs_col() const { return t_.cols() - 1; }
    const std::vector<Index>& basis() const { return basis_; }
    double rhs(Index i) const { return t_(i, rhs_col()); }
    double at(Index i, Index j) const { return t_(i, j); }

    void pivot(Index row, Index col)
    {
        const double piv = t_(row, col);
        t_.row(row) /= piv;
        for (Index i = 0; i < t_.rows(); ++i) {
            if (i == row) continue;
            const double factor = t_(i, col);
            if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
        }
        basis_[static_cast<std::size_t>(row)] = col;
    }

    double objective(const Vector& cost) const
    {
        double z = 0.0;
        for (Index i = 0; i < rows(); ++i) z += cost(basis_[static_cast<std::size_t>(i)]) * rhs(i);
        return z;
    }

    // Minimises cost over the columns [0, n_enter) allowed to enter.
    // Returns false when the objective is unbounded below.
    bool optimise(const Vector& cost, Index n_enter, int max_iterations)
    {
        for (int iter = 0; iter < max_iterations; ++iter) {
            Index entering = -1;
            for (Index j = 0; j < n_enter; ++j) {
                if (is_basic(j)) continue;
                double reduced = cost(j);
                for (Index i = 0; i < rows(); ++i) reduced -= cost(basis_[static_cast<std::size_t>(i)]) * t_(i, j);
                if (reduced < -kCostEps) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return true;

            Index leaving = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < rows(); ++i) {
                const double a = t_(i, entering);
                if (a <= kPivotEps) continue;
                const double ratio = std::max(0.0, rhs(i)) / a;
                const bool better = ratio < best - 1e-14 ||
                                    (std::abs(ratio - best) <= 1e-14 && leaving >= 0 &&
                                     basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)]);
                if (leaving < 0 || better) {
                    best = ratio;
                    leaving = i;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
        throw DaeError(ErrorKind::numerical_failure, "simplex did not converge within the iteration limit");
    }

private:
    bool is_basic(Index j) const { return std::find(basis_.begin(), basis_.end(), j) != basis_.end(); }

    Matrix t_;
    std::vector<Index> basis_;
};

}  // namespace

LpResult SimplexSolver::minimize(const Matrix& g_in, const Vector& f_in, const Vector& c,
                                 const TolerancePolicy& tol) const
{
    if (g_in.rows() != f_in.size()) throw DaeError(ErrorKind::dimension_mismatch, "LP: G and f row counts differ");
    if (g_in.cols() != c.size()) throw DaeError(ErrorKind::dimension_mismatch, "LP: G and c column counts differ");
    if (!g_in.allFinite() || !f_in.allFinite() || !c.allFinite()) {
        throw DaeError(ErrorKind::numerical_failure, "LP: non-finite data");
    }

    const Index p = g_in.rows();
    const Index k = g_in.cols();

    Matrix g = g_in;
    Vector f = f_in;
    Vector scale = Vector::Ones(p);
    for (Index i = 0; i < p; ++i) {
        const double r = g.row(i).cwiseAbs().maxCoeff();
        if (r > 0.0) {
            scale(i) = r;
            g.row(i) /= r;
            f(i) /= r;
        }
    }

    // Columns: x+ (k), x- (k), slacks (p), artificials (one per row with f < 0), rhs.
    std::vector<Index> art_rows;
    for (Index i = 0; i < p; ++i)
        if (f(i) < 0.0) art_rows.push_back(i);
    const Index n_struct = 2 * k + p;
    const Index n_art = static_cast<Index>(art_rows.size());
    const Index n_cols = n_struct + n_art;

    Matrix t = Matrix::Zero(p, n_cols + 1);
    std::vector<Index> basis(static_cast<std::size_t>(p));
    Index next_art = n_struct;
    for (Index i = 0; i < p; ++i) {
        const double sign = f(i) < 0.0 ? -1.0 : 1.0;
        t.block(i, 0, 1, k) = sign * g.row(i);
        t.block(i, k, 1, k) = -sign * g.row(i);
        t(i, 2 * k + i) = sign;
        t(i, n_cols) = sign * f(i);
        if (f(i) < 0.0) {
            t(i, next_art) = 1.0;
            basis[static_cast<std::size_t>(i)] = next_art++;
        } else {
            basis[static_cast<std::size_t>(i)] = 2 * k + i;
        }
    }
    Tableau tab(std::move(t), std::move(basis));

    if (n_art > 0) {
        Vector phase1 = Vector::Zero(n_cols);
        phase1.tail(n_art).setOnes();
        tab.optimise(phase1, n_cols, max_iterations_);
        if (tab.objective(phase1) > tol.feasibility_tol) return {LpStatus::infeasible, Vector(), 0.0};
        // Drive zero-valued artificials out of the basis where possible.
        for (Index i = 0; i < tab.rows(); ++i) {
            if (tab.basis()[static_cast<std::size_t>(i)] < n_struct) continue;
            for (Index j = 0; j < n_struct; ++j) {
                if (std::abs(tab.at(i, j)) > kPivotEps) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
    }

    Vector cost = Vector::Zero(n_cols);
    cost.head(k) = c;
    cost.segment(k, k) = -c;
    if (c.size() > 0 && c.cwiseAbs().maxCoeff() > 0.0) {
        if (!tab.optimise(cost, n_struct, max_iterations_)) return {LpStatus::unbounded, Vector(), 0.0};
    }

    Vector y = Vector::Zero(n_cols);
    for (Index i = 0; i < tab.rows(); ++i) y(tab.basis()[static_cast<std::size_t>(i)]) = tab.rhs(i);
    Vector x = y.head(k) - y.segment(k, k);

    const Vector violation = (g * x - f).cwiseMax(0.0);
    const double worst = violation.size() ? violation.maxCoeff() : 0.0;
    if (worst > 10.0 * tol.feasibility_tol) {
        throw DaeError(ErrorKind::numerical_failure,
                       "LP: recovered point violates constraints by " + std::to_string(worst));
    }
    return {LpStatus::optimal, x, c.dot(x)};
}

const LinearProgramSolver& default_lp_solver()
{
    static const SimplexSolver solver;
    return solver;
}

std::optional<Vector> find_feasible_point(const Matrix& g, const Vector& f, const TolerancePolicy& tol,
                                          const LinearProgramSolver& solver)
{
    const LpResult r = solver.minimize(g, f, Vector::Zero(g.cols()), tol);
    if (r.status == LpStatus::infeasible) return std::nullopt;
    return r.x;
}

}  // namespace daereach
