#pragma once

namespace gfactor::cft2d {

/// eta(q) = q^{1/24} prod_{n>=1} (1 - q^n), real nome 0 < q < 1.
double dedekind_eta(double q);

/// sum_{n in Z} exp(-a n^2), a > 0.  Small a is evaluated through the Jacobi
/// transformation sqrt(pi/a) sum_k exp(-pi^2 k^2 / a) so term counts stay
/// bounded near the border of the disordered region.
double theta_sum(double a);

/// Compact-boson winding/momentum double sum at real nome, which factorizes:
/// I(lam) = [sum_n q^{n^2/(4 pi lam)}] [sum_m q^{pi lam m^2}].
double instanton_sum(double lam, double q);

/// Vertex weight -> coupling maps on the principal arccos branch:
/// c^4/2 - 1 = -cos(2 pi^2 lam)  and  (c c')^2/2 - 1 = -cos(2 pi^2 Lam).
double lambda_of_c(double c);
double lambda_of_pair(double c, double c_prime);

/// O(1) fidelity term of the quantum eight-vertex model on the torus:
/// I(Lam) / sqrt(I(lam) I(lam')), nome q = exp(-2 pi aspect).
double g_eight_vertex(double c, double c_prime, double aspect);

/// Universal part of ln Z for the free boson on an L1 x L2 rectangle with
/// uniform free boundary conditions: ln(L2)/4 - ln(eta(q))/2, q = e^{-2 pi L1/L2}.
/// Takes no coupling argument; the coupling dependence cancels.
double rectangle_universal_term(double l1, double l2);

/// Weights, derived couplings and nome for one point of the disordered region.
struct CftPoint {
  double c = 0.0;
  double c_prime = 0.0;
  double lam = 0.0;
  double lam_prime = 0.0;
  double big_lam = 0.0;
  double aspect = 1.0;
  double q = 0.0;

  static CftPoint from_weights(double c, double c_prime, double aspect);
};

namespace detail {
/// Plain truncated sums with a fixed term count, for convergence tests.
double theta_sum_truncated(double a, int max_terms);
double eta_truncated(double q, int max_terms);
}  // namespace detail

}  // namespace gfactor::cft2d
