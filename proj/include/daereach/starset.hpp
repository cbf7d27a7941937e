#pragma once

#include "daereach/linear_program.hpp"
#include "daereach/matrix_kernel.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace daereach {

/// Polyhedral predicate C alpha <= d over the combination coefficients.
struct Predicate {
    Matrix C;
    Vector d;
};

/// Star set without a center vector: { V alpha : C alpha <= d }.
///
/// The predicate is immutable and shared between stars derived from the same
/// initial set, so affine images keep (C, d) bit-identical.
class StarSet {
public:
    /// Checks shapes and that the alpha-polytope is nonempty.
    StarSet(Matrix basis, Matrix c, Vector d, const TolerancePolicy& tol = {},
            const LinearProgramSolver& solver = default_lp_solver());

    /// Box predicate lo <= alpha <= hi.
    static StarSet box(Matrix basis, const Vector& lo, const Vector& hi, const TolerancePolicy& tol = {});

    /// Center-form input {c + G beta : C beta <= d}: the center becomes basis
    /// column 0 with alpha_0 pinned to 1 by an equality pair.
    static StarSet from_center(const Vector& center, const Matrix& generators, const Matrix& c, const Vector& d,
                               const TolerancePolicy& tol = {});

    const Matrix& basis() const noexcept { return basis_; }
    const Matrix& C() const noexcept { return predicate_->C; }
    const Vector& d() const noexcept { return predicate_->d; }
    const std::shared_ptr<const Predicate>& predicate() const noexcept { return predicate_; }

    Index dim() const noexcept { return basis_.rows(); }
    Index num_generators() const noexcept { return basis_.cols(); }
    Index num_constraints() const noexcept { return predicate_->C.rows(); }

    bool satisfies_predicate(const Vector& alpha, double tol) const;

    /// Same predicate, new basis (must keep the generator count).
    StarSet with_basis(Matrix basis) const;

    /// <T V, C, d>.
    StarSet linear_image(const Matrix& t) const;

private:
    StarSet(Matrix basis, std::shared_ptr<const Predicate> predicate);

    Matrix basis_;
    std::shared_ptr<const Predicate> predicate_;
};

/// Coefficient samples alpha with C alpha <= d. Rejection sampling inside the
/// LP bounding box, falling back to random convex combinations of polytope
/// vertices when rejection stalls (lower-dimensional polytopes). Throws
/// unbounded_predicate when the polytope is unbounded.
std::vector<Vector> sample_coefficients(const StarSet& theta, int count, std::uint64_t seed,
                                        const TolerancePolicy& tol = {});

/// V alpha for the samples of sample_coefficients with the same seed.
std::vector<Vector> sample_points(const StarSet& theta, int count, std::uint64_t seed,
                                  const TolerancePolicy& tol = {});

/// Vertices of {C alpha <= d} by enumerating k-row subsystems (small k only).
std::vector<Vector> enumerate_vertices(const Matrix& c, const Vector& d, double tol);

}  // namespace daereach
