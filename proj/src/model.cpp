#include "daereach/model.hpp"

#include "daereach/errors.hpp"

#include <random>
#include <string>

namespace daereach {

namespace {

void require_square(const Matrix& m, const char* name)
{
    if (m.rows() != m.cols()) {
        throw DaeError(ErrorKind::dimension_mismatch,
                       std::string(name) + " must be square, got " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
    }
}

}  // namespace

DaeSystem::DaeSystem(Matrix e, Matrix a, Matrix b, const TolerancePolicy& tol)
    : e_(std::move(e)), a_(std::move(a)), b_(std::move(b))
{
    require_valid(e_, "E");
    require_valid(a_, "A");
    if (!b_.allFinite()) throw DaeError(ErrorKind::invalid_argument, "matrix 'B' has non-finite entries");
    require_square(e_, "E");
    require_square(a_, "A");
    if (a_.rows() != e_.rows()) throw DaeError(ErrorKind::dimension_mismatch, "E and A differ in size");
    if (b_.rows() != e_.rows()) throw DaeError(ErrorKind::dimension_mismatch, "B must have n rows");
    if (numerical_rank(e_, tol) == e_.rows()) {
        throw DaeError(ErrorKind::nonsingular_e, "E is nonsingular: the system is an ODE");
    }
}

AutonomousDae AutonomousDae::from_pencil(Matrix e, Matrix a)
{
    require_valid(e, "E");
    require_valid(a, "A");
    require_square(e, "E");
    require_square(a, "A");
    if (a.rows() != e.rows()) throw DaeError(ErrorKind::dimension_mismatch, "E and A differ in size");
    AutonomousDae out;
    out.n_orig = e.rows();
    out.m_orig = 0;
    out.E = std::move(e);
    out.A = std::move(a);
    return out;
}

AutonomousDae to_autonomous(const DaeSystem& sys, const InputModel& inputs)
{
    const Index n = sys.n();
    if (!inputs.has_inputs()) {
        AutonomousDae out;
        out.E = sys.E();
        out.A = sys.A();
        out.n_orig = n;
        out.m_orig = 0;
        return out;
    }
    const Matrix& a_u = *inputs.input_dynamics;
    const Index m = sys.m();
    if (a_u.rows() != m || a_u.cols() != m) {
        throw DaeError(ErrorKind::dimension_mismatch,
                       "A_u must be " + std::to_string(m) + "x" + std::to_string(m));
    }
    if (!a_u.allFinite()) throw DaeError(ErrorKind::invalid_argument, "matrix 'A_u' has non-finite entries");

    AutonomousDae out;
    out.n_orig = n;
    out.m_orig = m;
    out.E = Matrix::Zero(n + m, n + m);
    out.A = Matrix::Zero(n + m, n + m);
    out.E.topLeftCorner(n, n) = sys.E();
    out.E.bottomRightCorner(m, m).setIdentity();
    out.A.topLeftCorner(n, n) = sys.A();
    out.A.topRightCorner(n, m) = sys.B();
    out.A.bottomRightCorner(m, m) = a_u;
    return out;
}

Matrix original_state_selector(const AutonomousDae& sys)
{
    Matrix sel = Matrix::Zero(sys.n_orig, sys.dim());
    sel.leftCols(sys.n_orig).setIdentity();
    return sel;
}

bool check_regularity(const AutonomousDae& sys, const TolerancePolicy& tol, const RegularityOptions& opts)
{
    if (opts.trials < 1) throw DaeError(ErrorKind::invalid_argument, "regularity check needs trials >= 1");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(opts.sample_low, opts.sample_high);
    const Index n = sys.dim();
    for (int i = 0; i < opts.trials; ++i) {
        const double s = dist(rng);
        if (numerical_rank(s * sys.E - sys.A, tol) == n) return true;
    }
    return false;
}

Benchmark build_rotating_masses()
{
    const double j1 = 1.0;
    const double j2 = 2.0;
    Matrix e = Matrix::Zero(4, 4);
    e(0, 0) = j1;
    e(1, 1) = j2;

    Matrix a(4, 4);
    a << 0, 0, 1, 0,
         0, 0, 0, 1,
         0, 0, -1, -1,
         -1, 1, 0, 0;

    Matrix b = Matrix::Zero(4, 2);
    b(0, 0) = 1;
    b(1, 1) = 1;

    Matrix a_u(2, 2);
    a_u << 0, 1,
           -1, 0;

    return {DaeSystem(std::move(e), std::move(a), std::move(b)), InputModel::dynamics(std::move(a_u))};
}

Index StokesLayout::u_index(int face_i, int cell_j) const
{
    return static_cast<Index>(cell_j) * (grid_n - 1) + (face_i - 1);
}

Index StokesLayout::v_index(int cell_i, int face_j) const
{
    return n_u + static_cast<Index>(face_j - 1) * grid_n + cell_i;
}

Index StokesLayout::p_index(int cell_i, int cell_j) const
{
    const Index flat = static_cast<Index>(cell_j) * grid_n + cell_i;
    if (flat == static_cast<Index>(grid_n) * grid_n - 1) return -1;
    return n_velocity + flat;
}

StokesLayout stokes_layout(int grid_n)
{
    if (grid_n < 2) throw DaeError(ErrorKind::invalid_argument, "Stokes grid needs grid_n >= 2");
    StokesLayout l;
    l.grid_n = grid_n;
    l.n_u = static_cast<Index>(grid_n - 1) * grid_n;
    l.n_v = l.n_u;
    l.n_velocity = l.n_u + l.n_v;
    l.n_pressure = static_cast<Index>(grid_n) * grid_n - 1;
    l.n = l.n_velocity + l.n_pressure;
    const int c = grid_n / 2;
    l.center_u = l.u_index(c, c);
    l.center_v = l.v_index(c, c);
    return l;
}

DaeSystem build_stokes(int grid_n)
{
    const StokesLayout l = stokes_layout(grid_n);
    const int k = grid_n;
    const double h = 1.0 / k;
    const double lap = 1.0 / (h * h);
    const double grad = 1.0 / h;

    Matrix e = Matrix::Zero(l.n, l.n);
    e.topLeftCorner(l.n_velocity, l.n_velocity).setIdentity();

    // Velocity block: Laplacian with the wall-normal component fixed to zero on
    // the face and a mirrored ghost value for the wall-tangential component.
    Matrix lmat = Matrix::Zero(l.n_velocity, l.n_velocity);
    Matrix g = Matrix::Zero(l.n_velocity, l.n_pressure);
    auto add_grad = [&](Index row, int ci, int cj, double coeff) {
        const Index p = l.p_index(ci, cj);
        if (p >= 0) g(row, p - l.n_velocity) += coeff;
    };

    for (int j = 0; j < k; ++j) {
        for (int i = 1; i < k; ++i) {
            const Index r = l.u_index(i, j);
            lmat(r, r) -= 4.0 * lap;
            if (i - 1 >= 1) lmat(r, l.u_index(i - 1, j)) += lap;
            if (i + 1 <= k - 1) lmat(r, l.u_index(i + 1, j)) += lap;
            if (j - 1 >= 0) lmat(r, l.u_index(i, j - 1)) += lap; else lmat(r, r) -= lap;
            if (j + 1 <= k - 1) lmat(r, l.u_index(i, j + 1)) += lap; else lmat(r, r) -= lap;
            add_grad(r, i, j, -grad);
            add_grad(r, i - 1, j, grad);
        }
    }
    for (int j = 1; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            const Index r = l.v_index(i, j);
            lmat(r, r) -= 4.0 * lap;
            if (j - 1 >= 1) lmat(r, l.v_index(i, j - 1)) += lap;
            if (j + 1 <= k - 1) lmat(r, l.v_index(i, j + 1)) += lap;
            if (i - 1 >= 0) lmat(r, l.v_index(i - 1, j)) += lap; else lmat(r, r) -= lap;
            if (i + 1 <= k - 1) lmat(r, l.v_index(i + 1, j)) += lap; else lmat(r, r) -= lap;
            add_grad(r, i, j, -grad);
            add_grad(r, i, j - 1, grad);
        }
    }

    Matrix a = Matrix::Zero(l.n, l.n);
    a.topLeftCorner(l.n_velocity, l.n_velocity) = lmat;
    a.topRightCorner(l.n_velocity, l.n_pressure) = g;
    a.bottomLeftCorner(l.n_pressure, l.n_velocity) = g.transpose();

    Matrix b = Matrix::Zero(l.n, 1);
    b(l.center_u, 0) = 1.0;
    b(l.center_v, 0) = 1.0;

    return DaeSystem(std::move(e), std::move(a), std::move(b));
}

}  // namespace daereach
