#pragma once

namespace gfactor::bcft {

/// Free-boson stiffness lam and the equivalent Luttinger parameter K,
/// tied by 4 pi lam K = 1.
struct Coupling {
  double lam = 0.0;
  double k = 0.0;
};

Coupling coupling_from_lambda(double lam);
Coupling coupling_from_k(double k);

/// XXZ anisotropy -> free-boson stiffness, lam = (pi - arccos delta)/(2 pi^2).
/// Valid on the critical line -1 < delta <= 1.
Coupling lambda_of_delta(double delta);

/// Universal O(1) fidelity term between two critical free bosons:
/// g = sqrt((lam1 + lam2) / (2 sqrt(lam1 lam2))).
double g_critical(double lam1, double lam2);

/// Boundary g-factors of a single compactified free boson.
double g_dirichlet(double lam);  // 2^{-1/2} (pi lam)^{-1/4}
double g_neumann(double lam);    // (pi lam)^{1/4}

/// Critical/massive pairing: g = sqrt(2) K^{1/4} with K of the critical side.
double g_critical_massive(double k);

/// Toroidal (antiperiodic) closure carries no O(1) term.
inline double g_antiperiodic() { return 1.0; }

}  // namespace gfactor::bcft
