#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gfactor/fidelity.hpp"

namespace gfactor::gaussian {

/// Ground state of a harmonic ring with stiffness lam: a Gaussian wave
/// functional exp(-phi^T A phi / 2) with width operator A = lam sqrt(K_ring),
/// K_ring the ring Laplacian.  A annihilates the constant vector (the zero
/// mode), so overlaps are taken on the (L-1)-dimensional complement.
class GaussianState {
 public:
  GaussianState(int length, double lam);

  int length() const { return length_; }
  double lam() const { return lam_; }
  const Eigen::MatrixXd& width_matrix() const { return a_; }

 private:
  int length_;
  double lam_;
  Eigen::MatrixXd a_;
};

/// Overlap of two normalized Gaussians with SPD width matrices:
/// det(A1)^{1/4} det(A2)^{1/4} det((A1+A2)/2)^{-1/2}.
double overlap_from_width_matrices(const Eigen::MatrixXd& a1,
                                   const Eigen::MatrixXd& a2);

/// Determinant-formula overlap restricted to the zero-mode-free subspace.
double gaussian_overlap(const GaussianState& s1, const GaussianState& s2);

/// Shared-eigenbasis closed form r^{(L-1)/2}, r = 2 sqrt(lam1 lam2)/(lam1+lam2).
double closed_form_overlap(double lam1, double lam2, int length);

std::vector<std::pair<int, double>> overlap_series(
    double lam1, double lam2, const std::vector<int>& l_list);

/// Determinant overlaps over l_list fed through the finite-size fit; for this
/// exactly linear series the fit returns ln g = f = -ln(r)/2 and c1 = 0.
fidelity::GFactorEstimate oracle_g(double lam1, double lam2,
                                   const std::vector<int>& l_list);

}  // namespace gfactor::gaussian
