#include "daereach/consistency.hpp"

#include "daereach/errors.hpp"

#include <string>

namespace daereach {

Matrix build_consistent_matrix(const DecoupledSystem& dec)
{
    const Index n = dec.dim();
    const auto& P = dec.chain.P;
    const auto& Q = dec.chain.Q;
    const auto& N = dec.N;

    switch (dec.mu) {
    case 1:
        return Q[0] - N.at(2) * P[0];
    case 2: {
        const Matrix p01 = P[0] * P[1];
        Matrix gamma(2 * n, n);
        gamma.topRows(n) = P[0] * Q[1] - N.at(2) * p01;
        gamma.bottomRows(n) = Q[0] - (N.at(3) + *dec.L3 * N.at(2) * N.at(1)) * p01;
        return gamma;
    }
    case 3: {
        const Matrix p012 = P[0] * P[1] * P[2];
        const Matrix& n1 = N.at(1);
        const Matrix n1sq = n1 * n1;
        Matrix gamma(3 * n, n);
        gamma.topRows(n) = P[0] * P[1] * Q[2] - N.at(2) * p012;
        gamma.middleRows(n, n) = P[0] * Q[1] - (N.at(3) + *dec.L3 * N.at(2) * n1) * p012;
        gamma.bottomRows(n) =
            Q[0] - (N.at(4) + *dec.L4 * (N.at(3) * n1 + *dec.L3 * N.at(2) * n1sq) + *dec.Z4 * N.at(2) * n1) * p012;
        return gamma;
    }
    default:
        throw DaeError(ErrorKind::invalid_argument, "consistent matrix needs an index in {1, 2, 3}");
    }
}

ConsistencyCertificate check_initial_star(const Matrix& gamma, const StarSet& theta0, const TolerancePolicy& tol)
{
    if (gamma.cols() != theta0.dim()) {
        throw DaeError(ErrorKind::dimension_mismatch, "Gamma column count differs from the star dimension");
    }
    ConsistencyCertificate cert;
    cert.gamma = gamma;
    const Matrix residual = gamma * theta0.basis();
    Index row = 0;
    Index col = 0;
    cert.max_residual = residual.size() ? residual.cwiseAbs().maxCoeff(&row, &col) : 0.0;
    cert.worst_column = col;
    cert.worst_block = gamma.cols() > 0 ? row / gamma.cols() : 0;
    cert.consistent = cert.max_residual <= tol.consistency_tol;
    return cert;
}

}  // namespace daereach

namespace daereach {

namespace {

std::string describe(const ConsistencyCertificate& cert)
{
    return "inconsistent initial set: max |Gamma V(0)| = " + std::to_string(cert.max_residual) + " at basis column " +
           std::to_string(cert.worst_column) + ", constraint block " + std::to_string(cert.worst_block);
}

}  // namespace

InconsistentInitialSet::InconsistentInitialSet(ConsistencyCertificate cert)
    : DaeError(ErrorKind::inconsistent_init, describe(cert)), cert_(std::move(cert))
{
}

}  // namespace daereach
