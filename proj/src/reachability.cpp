#include "daereach/reachability.hpp"

#include "daereach/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <chrono>
#include <cmath>

namespace daereach {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Matrix> propagate_transition(const Matrix& n1, const Matrix& v0, const ReachSettings& s)
{
    const Matrix phi = matrix_exponential(n1, s.time_step);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(s.num_steps) + 1);
    out.push_back(v0);
    for (int j = 1; j <= s.num_steps; ++j) out.push_back(phi * out.back());
    return out;
}

std::vector<Matrix> propagate_adaptive(const Matrix& n1, const Matrix& v0, const ReachSettings& s)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::vector<double>;

    const Index n = v0.rows();
    std::vector<Matrix> out(static_cast<std::size_t>(s.num_steps) + 1, Matrix(n, v0.cols()));
    std::vector<double> times(static_cast<std::size_t>(s.num_steps) + 1);
    for (std::size_t j = 0; j < times.size(); ++j) times[j] = static_cast<double>(j) * s.time_step;

    auto rhs = [&n1, n](const State& x, State& dxdt, double) {
        Eigen::Map<const Vector> xv(x.data(), n);
        Eigen::Map<Vector> dv(dxdt.data(), n);
        dv.noalias() = n1 * xv;
    };

    for (Index col = 0; col < v0.cols(); ++col) {
        State x(v0.col(col).data(), v0.col(col).data() + n);
        std::size_t slot = 0;
        auto observer = [&](const State& state, double) {
            out[slot++].col(col) = Eigen::Map<const Vector>(state.data(), n);
        };
        auto stepper = odeint::make_dense_output(s.abs_tol, s.rel_tol, odeint::runge_kutta_dopri5<State>());
        odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), s.time_step, observer);
        if (slot != times.size()) {
            throw DaeError(ErrorKind::numerical_failure, "adaptive integrator stopped before the time bound");
        }
    }
    return out;
}

}  // namespace

void ReachSettings::validate() const
{
    if (!(time_step > 0.0) || !std::isfinite(time_step)) {
        throw DaeError(ErrorKind::invalid_argument, "time step must be positive");
    }
    if (num_steps < 1) throw DaeError(ErrorKind::invalid_argument, "number of steps must be at least 1");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw DaeError(ErrorKind::invalid_argument, "integrator tolerances must be positive");
    }
}

Matrix build_psi(const DecoupledSystem& dec)
{
    const Index n = dec.dim();
    const auto& N = dec.N;
    Matrix psi = Matrix::Identity(n, n) + N.at(2);
    if (dec.mu >= 2) {
        const Matrix n2n1 = N.at(2) * N.at(1);
        psi += N.at(3) + *dec.L3 * n2n1;
        if (dec.mu == 3) {
            const Matrix& l4 = *dec.L4;
            psi += N.at(4) + l4 * N.at(3) * N.at(1) + l4 * *dec.L3 * n2n1 * N.at(1) + *dec.Z4 * n2n1;
        }
    }
    return psi;
}

std::vector<Matrix> propagate_basis(const DecoupledSystem& dec, const Matrix& ode_basis0,
                                    const ReachSettings& settings)
{
    settings.validate();
    const Matrix& n1 = dec.N.at(1);
    if (ode_basis0.rows() != n1.rows()) {
        throw DaeError(ErrorKind::dimension_mismatch, "ODE basis dimension differs from N1");
    }
    if (settings.mode == PropagationMode::transition_matrix) return propagate_transition(n1, ode_basis0, settings);
    return propagate_adaptive(n1, ode_basis0, settings);
}

std::vector<Matrix> propagate_basis(const DecoupledSystem& dec, const StarSet& theta1_0,
                                    const ReachSettings& settings)
{
    return propagate_basis(dec, theta1_0.basis(), settings);
}

ReachResult compute_reach(const AutonomousDae& sys, const StarSet& theta0, const ReachSettings& settings,
                          const TolerancePolicy& tol)
{
    settings.validate();
    tol.validate();
    if (theta0.dim() != sys.dim()) {
        throw DaeError(ErrorKind::dimension_mismatch, "initial star dimension differs from the system dimension");
    }

    ReachResult out;
    out.settings = settings;
    out.n_orig = sys.n_orig;
    out.m_orig = sys.m_orig;

    auto t0 = Clock::now();
    out.decoupled = decouple_system(sys, tol);
    out.timings.decoupling = seconds_since(t0);

    t0 = Clock::now();
    out.certificate = check_initial_star(build_consistent_matrix(out.decoupled), theta0, tol);
    out.timings.consistency = seconds_since(t0);
    if (!out.certificate.consistent) throw InconsistentInitialSet(out.certificate);

    t0 = Clock::now();
    const Matrix v1_0 = out.decoupled.ode_projector() * theta0.basis();
    out.ode_basis = propagate_basis(out.decoupled, v1_0, settings);
    out.psi = build_psi(out.decoupled);
    out.stars.reserve(out.ode_basis.size());
    for (const Matrix& v1 : out.ode_basis) out.stars.push_back(theta0.with_basis(out.psi * v1));
    out.timings.reach = seconds_since(t0);
    return out;
}

}  // namespace daereach
