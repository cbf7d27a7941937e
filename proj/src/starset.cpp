#include "daereach/starset.hpp"

#include "daereach/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace daereach {

namespace {

constexpr long kMaxVertexSubsets = 200000;

long binomial(long n, long k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kMaxVertexSubsets) return r;
    }
    return r;
}

bool next_combination(std::vector<Index>& idx, Index n)
{
    const Index k = static_cast<Index>(idx.size());
    for (Index i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < n - k + i) {
            ++idx[static_cast<std::size_t>(i)];
            for (Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

double slack_tol(const Vector& d, double tol) { return tol * std::max(1.0, d.cwiseAbs().maxCoeff()); }

}  // namespace

StarSet::StarSet(Matrix basis, Matrix c, Vector d, const TolerancePolicy& tol, const LinearProgramSolver& solver)
    : basis_(std::move(basis))
{
    require_valid(basis_, "V");
    require_valid(c, "C");
    if (basis_.cols() < 1) throw DaeError(ErrorKind::invalid_argument, "star basis needs at least one column");
    if (c.rows() < 1) throw DaeError(ErrorKind::invalid_argument, "star predicate needs at least one constraint");
    if (c.cols() != basis_.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch, "predicate C must have one column per basis vector");
    }
    if (d.size() != c.rows()) throw DaeError(ErrorKind::dimension_mismatch, "predicate d must have one entry per row of C");
    if (!d.allFinite()) throw DaeError(ErrorKind::invalid_argument, "predicate d has non-finite entries");
    if (!find_feasible_point(c, d, tol, solver)) {
        throw DaeError(ErrorKind::empty_predicate, "star predicate C alpha <= d is infeasible");
    }
    predicate_ = std::make_shared<const Predicate>(Predicate{std::move(c), std::move(d)});
}

StarSet::StarSet(Matrix basis, std::shared_ptr<const Predicate> predicate)
    : basis_(std::move(basis)), predicate_(std::move(predicate))
{
}

StarSet StarSet::box(Matrix basis, const Vector& lo, const Vector& hi, const TolerancePolicy& tol)
{
    const Index k = basis.cols();
    if (lo.size() != k || hi.size() != k) throw DaeError(ErrorKind::dimension_mismatch, "box bounds need k entries");
    Matrix c(2 * k, k);
    c << Matrix::Identity(k, k), -Matrix::Identity(k, k);
    Vector d(2 * k);
    d << hi, -lo;
    return StarSet(std::move(basis), std::move(c), std::move(d), tol);
}

StarSet StarSet::from_center(const Vector& center, const Matrix& generators, const Matrix& c, const Vector& d,
                             const TolerancePolicy& tol)
{
    if (generators.rows() != center.size()) {
        throw DaeError(ErrorKind::dimension_mismatch, "center and generators differ in dimension");
    }
    if (c.cols() != generators.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch, "predicate C must have one column per generator");
    }
    const Index k = generators.cols();
    Matrix basis(center.size(), k + 1);
    basis << center, generators;
    Matrix cc = Matrix::Zero(c.rows() + 2, k + 1);
    cc(0, 0) = 1.0;
    cc(1, 0) = -1.0;
    cc.bottomRightCorner(c.rows(), k) = c;
    Vector dd(d.size() + 2);
    dd << 1.0, -1.0, d;
    return StarSet(std::move(basis), std::move(cc), std::move(dd), tol);
}

bool StarSet::satisfies_predicate(const Vector& alpha, double tol) const
{
    if (alpha.size() != num_generators()) return false;
    const Vector slack = C() * alpha - d();
    return slack.maxCoeff() <= slack_tol(d(), tol);
}

StarSet StarSet::with_basis(Matrix basis) const
{
    if (basis.cols() != basis_.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch, "with_basis must keep the number of generators");
    }
    return StarSet(std::move(basis), predicate_);
}

StarSet StarSet::linear_image(const Matrix& t) const
{
    if (t.cols() != basis_.rows()) {
        throw DaeError(ErrorKind::dimension_mismatch,
                       "linear_image: map has " + std::to_string(t.cols()) + " columns, star lives in dimension " +
                           std::to_string(basis_.rows()));
    }
    return StarSet(t * basis_, predicate_);
}

std::vector<Vector> enumerate_vertices(const Matrix& c, const Vector& d, double tol)
{
    const Index p = c.rows();
    const Index k = c.cols();
    std::vector<Vector> out;
    if (k == 0 || p < k) return out;
    if (binomial(p, k) > kMaxVertexSubsets) {
        throw DaeError(ErrorKind::numerical_failure, "vertex enumeration: too many constraint subsets");
    }
    const double stol = slack_tol(d, tol);
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    do {
        Matrix sub(k, k);
        Vector rhs(k);
        for (Index i = 0; i < k; ++i) {
            sub.row(i) = c.row(idx[static_cast<std::size_t>(i)]);
            rhs(i) = d(idx[static_cast<std::size_t>(i)]);
        }
        Eigen::FullPivLU<Matrix> lu(sub);
        if (lu.rank() < k) continue;
        const Vector v = lu.solve(rhs);
        if ((c * v - d).maxCoeff() > stol) continue;
        bool duplicate = false;
        for (const Vector& w : out) {
            if ((w - v).cwiseAbs().maxCoeff() <= stol) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) out.push_back(v);
    } while (next_combination(idx, p));
    return out;
}

std::vector<Vector> sample_coefficients(const StarSet& theta, int count, std::uint64_t seed,
                                        const TolerancePolicy& tol)
{
    if (count < 1) throw DaeError(ErrorKind::invalid_argument, "sample count must be positive");
    const Matrix& c = theta.C();
    const Vector& d = theta.d();
    const Index k = theta.num_generators();
    const LinearProgramSolver& solver = default_lp_solver();

    Vector lo(k);
    Vector hi(k);
    for (Index i = 0; i < k; ++i) {
        Vector dir = Vector::Zero(k);
        dir(i) = 1.0;
        const LpResult low = solver.minimize(c, d, dir, tol);
        const LpResult high = solver.minimize(c, d, -dir, tol);
        if (low.status == LpStatus::unbounded || high.status == LpStatus::unbounded) {
            throw DaeError(ErrorKind::unbounded_predicate, "cannot sample an unbounded alpha-polytope");
        }
        if (low.status != LpStatus::optimal || high.status != LpStatus::optimal) {
            throw DaeError(ErrorKind::empty_predicate, "alpha-polytope is empty");
        }
        lo(i) = low.x(i);
        hi(i) = high.x(i);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(count));

    const double ptol = tol.feasibility_tol;
    const long budget = 1000L * count;
    long attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < budget) {
        ++attempts;
        Vector alpha(k);
        for (Index i = 0; i < k; ++i) {
            const double w = hi(i) - lo(i);
            alpha(i) = w <= 1e-12 ? 0.5 * (lo(i) + hi(i)) : lo(i) + w * unit(rng);
        }
        if (theta.satisfies_predicate(alpha, ptol)) out.push_back(std::move(alpha));
    }
    if (static_cast<int>(out.size()) == count) return out;

    // Rejection stalled: mix vertices with Dirichlet(1) weights.
    const std::vector<Vector> vertices = enumerate_vertices(c, d, ptol);
    if (vertices.empty()) throw DaeError(ErrorKind::numerical_failure, "no vertices found for a nonempty polytope");
    std::exponential_distribution<double> expo(1.0);
    while (static_cast<int>(out.size()) < count) {
        Vector alpha = Vector::Zero(k);
        double total = 0.0;
        for (const Vector& v : vertices) {
            const double w = expo(rng);
            alpha += w * v;
            total += w;
        }
        out.push_back(alpha / total);
    }
    return out;
}

std::vector<Vector> sample_points(const StarSet& theta, int count, std::uint64_t seed, const TolerancePolicy& tol)
{
    std::vector<Vector> alphas = sample_coefficients(theta, count, seed, tol);
    for (Vector& a : alphas) a = theta.basis() * a;
    return alphas;
}

}  // namespace daereach
