#pragma once

#include <cstdint>
#include <vector>

namespace gfactor::vertex6 {

/// Small six-vertex torus (weights a = b = 1, d = 0, variable c-weight).
/// L1 is the row width, L2 the number of rows; the transfer matrix acts on
/// the 2^L1 states of a row of vertical arrows.
struct VertexLattice {
  int l1 = 2;
  int l2 = 2;
  double c = 1.0;

  VertexLattice(int l1_, int l2_, double c_ = 1.0);
  int vertices() const { return l1 * l2; }
};

/// Z(w) = sum over ice-rule configurations of w^{n_c}, evaluated as the trace
/// of the L2-th power of the row transfer matrix.  w >= 0.
double z2d(const VertexLattice& lattice, double weight);

/// Integer coefficients N_k of the polynomial Z(w) = sum_k N_k w^k, computed
/// with a polynomial-valued transfer matrix (exact).
std::vector<std::int64_t> z2d_coefficients(const VertexLattice& lattice);

/// Brute-force reference: enumerates every vertical-edge assignment and sums
/// row-compatible horizontal configurations directly.  Restricted to
/// l1 * l2 <= 16.
std::vector<std::int64_t> enumeration_histogram(const VertexLattice& lattice);

double evaluate_histogram(const std::vector<std::int64_t>& hist, double weight);

/// Exact lattice overlap Z(c c') / sqrt(Z(c^2) Z(c'^2)) in (0, 1];
/// equals 1 iff c = c' (Cauchy-Schwarz on the configuration weights).
double lattice_fidelity(const VertexLattice& lattice, double c, double c_prime);

}  // namespace gfactor::vertex6
