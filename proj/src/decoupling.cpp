#include "daereach/decoupling.hpp"

#include "daereach/errors.hpp"

#include <string>

namespace daereach {

namespace {

constexpr int kMaxIndex = 3;

bool is_nonsingular(const Matrix& m, const TolerancePolicy& tol)
{
    return numerical_rank(m, tol) == m.rows();
}

// Rebuilds E_j, A_j, P_j from a fixed list of projectors.
MatrixChain rebuild(const Matrix& e0, const Matrix& a0, std::vector<Matrix> projectors)
{
    const Index n = e0.rows();
    const Matrix id = Matrix::Identity(n, n);
    MatrixChain out;
    out.mu = static_cast<int>(projectors.size());
    out.E.push_back(e0);
    out.A.push_back(a0);
    for (const Matrix& q : projectors) {
        const Matrix& e = out.E.back();
        const Matrix& a = out.A.back();
        Matrix p = id - q;
        Matrix e_next = e - a * q;
        Matrix a_next = a * p;
        out.Q.push_back(q);
        out.P.push_back(std::move(p));
        out.E.push_back(std::move(e_next));
        out.A.push_back(std::move(a_next));
    }
    return out;
}

}  // namespace

MatrixChain compute_index_and_chain(const AutonomousDae& sys, const TolerancePolicy& tol)
{
    if (!check_regularity(sys, tol)) {
        throw DaeError(ErrorKind::irregular_pencil, "det(sE - A) vanishes at every sample: pencil is not regular");
    }
    const Index n = sys.dim();
    const Matrix id = Matrix::Identity(n, n);
    MatrixChain chain;
    chain.E.push_back(sys.E);
    chain.A.push_back(sys.A);

    if (is_nonsingular(sys.E, tol)) {
        throw DaeError(ErrorKind::nonsingular_e, "E is nonsingular: the DAE is equivalent to an ODE");
    }
    for (int j = 0; j < kMaxIndex; ++j) {
        const Matrix& e = chain.E.back();
        const Matrix& a = chain.A.back();
        Matrix q = orthogonal_null_projector(e, tol);
        Matrix p = id - q;
        Matrix e_next = e - a * q;
        Matrix a_next = a * p;
        chain.Q.push_back(std::move(q));
        chain.P.push_back(std::move(p));
        chain.E.push_back(std::move(e_next));
        chain.A.push_back(std::move(a_next));
        if (is_nonsingular(chain.E.back(), tol)) {
            chain.mu = j + 1;
            return chain;
        }
    }
    throw DaeError(ErrorKind::index_too_high,
                   "E_" + std::to_string(kMaxIndex) + " is still singular: index larger than 3 is unsupported");
}

MatrixChain make_admissible(const MatrixChain& chain, const TolerancePolicy& tol)
{
    if (chain.mu < 1 || chain.mu > kMaxIndex) {
        throw DaeError(ErrorKind::invalid_argument, "make_admissible needs an index in {1, 2, 3}");
    }
    if (chain.mu == 1) return chain;

    const Index n = chain.dim();
    const Matrix id = Matrix::Identity(n, n);

    if (chain.mu == 2) {
        const Matrix e2_inv = solve_inverse(chain.E[2], tol);
        Matrix q1 = -chain.Q[1] * e2_inv * chain.A[1];
        return rebuild(chain.E[0], chain.A[0], {chain.Q[0], std::move(q1)});
    }

    // Index 3. Sign convention follows the proved construction (Q2' = -Q2 E3^{-1} A2).
    const Matrix& e1 = chain.E[1];
    const Matrix& a1 = chain.A[1];
    const Matrix e3_inv = solve_inverse(chain.E[3], tol);
    const Matrix q2p = -chain.Q[2] * e3_inv * chain.A[2];
    const Matrix p2p = id - q2p;
    const Matrix q1p = -chain.Q[1] * p2p * e3_inv * a1;
    const Matrix p1p = id - q1p;
    const Matrix e2p = e1 - a1 * q1p;
    const Matrix a2p = a1 * p1p;
    const Matrix q2pp = orthogonal_null_projector(e2p, tol);
    const Matrix e3pp = e2p - a2p * q2pp;
    Matrix q2s = -q2pp * solve_inverse(e3pp, tol) * a2p;

    MatrixChain out = rebuild(chain.E[0], chain.A[0], {chain.Q[0], q1p, std::move(q2s)});
    if (!is_nonsingular(out.E[3], tol)) {
        throw DaeError(ErrorKind::singular_matrix, "rebuilt E_3 is singular: index misclassified at this tolerance");
    }
    return out;
}

DecoupledSystem decouple(const MatrixChain& ch, const Matrix& b, const TolerancePolicy& tol)
{
    if (ch.mu < 1 || ch.mu > kMaxIndex) {
        throw DaeError(ErrorKind::invalid_argument, "decouple needs an index in {1, 2, 3}");
    }
    if (b.rows() != ch.dim()) throw DaeError(ErrorKind::dimension_mismatch, "B must have n rows");

    DecoupledSystem out;
    out.mu = ch.mu;
    out.chain = ch;

    const int mu = ch.mu;
    const Matrix e_inv = solve_inverse(ch.E[mu], tol);
    // Index 1 uses A_0; it agrees with A_1 = A_0 P_0 on the ODE subspace.
    const Matrix ea = e_inv * (mu == 1 ? ch.A[0] : ch.A[mu]);
    const Matrix eb = e_inv * b;

    // Left factors applied to E_mu^{-1} A_mu for N_i (and to E_mu^{-1} B for M_i).
    std::map<int, Matrix> left;
    const auto& P = ch.P;
    const auto& Q = ch.Q;
    switch (mu) {
    case 1:
        out.subsystem_projectors = {{1, P[0]}, {2, Q[0]}};
        left = out.subsystem_projectors;
        break;
    case 2:
        out.subsystem_projectors = {{1, P[0] * P[1]}, {2, P[0] * Q[1]}, {3, Q[0]}};
        left = {{1, P[0] * P[1]}, {2, P[0] * Q[1]}, {3, Q[0] * P[1]}};
        out.L3 = Q[0] * Q[1];
        break;
    case 3:
        out.subsystem_projectors = {
            {1, P[0] * P[1] * P[2]}, {2, P[0] * P[1] * Q[2]}, {3, P[0] * Q[1]}, {4, Q[0]}};
        left = {{1, P[0] * P[1] * P[2]}, {2, P[0] * P[1] * Q[2]}, {3, P[0] * Q[1] * P[2]}, {4, Q[0] * P[1] * P[2]}};
        out.L3 = P[0] * Q[1] * Q[2];
        out.L4 = Q[0] * Q[1];
        out.Z4 = Q[0] * P[1] * Q[2];
        break;
    default:
        break;
    }
    for (const auto& [id, l] : left) {
        out.N[id] = l * ea;
        out.M[id] = l * eb;
    }
    return out;
}

DecoupledSystem decouple(const MatrixChain& admissible, const TolerancePolicy& tol)
{
    return decouple(admissible, Matrix::Zero(admissible.dim(), 0), tol);
}

DecoupledSystem decouple_system(const AutonomousDae& sys, const TolerancePolicy& tol)
{
    MatrixChain raw = compute_index_and_chain(sys, tol);
    MatrixChain adm = make_admissible(raw, tol);
    DecoupledSystem out = decouple(adm, tol);
    out.raw_chain = std::move(raw);
    return out;
}

}  // namespace daereach
