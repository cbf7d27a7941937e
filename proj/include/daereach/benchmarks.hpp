#pragma once

#include "daereach/decoupling.hpp"
#include "daereach/safety.hpp"
#include "daereach/starset.hpp"

#include <cstdint>

namespace daereach {

/// Consistent initial star of the rotating-masses example over (z1, z2, M2, M3, M1, M4):
/// columns (0,0,5,-5,-6,3)/sqrt(95) and (0,0,0,0,1,2)/sqrt(5), alpha1 in [0.1, 0.2],
/// alpha2 in [1.0, 1.2].
StarSet rotating_masses_initial_star();

/// The same basis rounded to three decimals (0.513, -0.616, 0.447, ...). The
/// rounding leaves a residual of about 3e-4 in Gamma V(0).
Matrix rotating_masses_rounded_basis();

/// M2 <= -0.9 over the four physical states.
UnsafeSpec rotating_masses_unsafe_m2();

/// x4 = M3 <= -1.0 over the four physical states.
UnsafeSpec rotating_masses_unsafe_x4();

/// k random Gaussian columns projected onto Ker(Gamma), box predicate [0, 1]^k.
StarSet consistent_random_star(const DecoupledSystem& dec, int k, std::uint64_t seed,
                               const TolerancePolicy& tol = {});

}  // namespace daereach
