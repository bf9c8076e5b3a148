#include "gfactor/gaussian_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace gfactor::gaussian {

namespace {

Eigen::MatrixXd ring_laplacian(int length) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(length, length);
  for (int i = 0; i < length; ++i) {
    k(i, i) += 2.0;
    k(i, (i + 1) % length) -= 1.0;
    k((i + 1) % length, i) -= 1.0;
  }
  return k;
}

double log_det_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("width matrix is not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

/// Orthonormal basis of the complement of the constant vector.
Eigen::MatrixXd zero_mode_complement(int length) {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(length, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(length - 1);
}

}  // namespace

GaussianState::GaussianState(int length, double lam)
    : length_(length), lam_(lam) {
  if (length < 2) throw std::invalid_argument("ring needs at least 2 sites");
  if (!(lam > 0.0)) throw std::domain_error("stiffness must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ring_laplacian(length));
  Eigen::VectorXd sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  a_ = lam * es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
}

double overlap_from_width_matrices(const Eigen::MatrixXd& a1,
                                   const Eigen::MatrixXd& a2) {
  if (a1.rows() != a2.rows() || a1.cols() != a2.cols() || a1.rows() != a1.cols())
    throw std::invalid_argument("width matrices must be square and same size");
  const double ld1 = log_det_spd(a1);
  const double ld2 = log_det_spd(a2);
  const double ldm = log_det_spd(0.5 * (a1 + a2));
  return std::exp(0.25 * ld1 + 0.25 * ld2 - 0.5 * ldm);
}

double gaussian_overlap(const GaussianState& s1, const GaussianState& s2) {
  if (s1.length() != s2.length())
    throw std::invalid_argument("ring sizes differ");
  const Eigen::MatrixXd p = zero_mode_complement(s1.length());
  const Eigen::MatrixXd m1 = p.transpose() * s1.width_matrix() * p;
  const Eigen::MatrixXd m2 = p.transpose() * s2.width_matrix() * p;
  return overlap_from_width_matrices(m1, m2);
}

double closed_form_overlap(double lam1, double lam2, int length) {
  if (!(lam1 > 0.0) || !(lam2 > 0.0))
    throw std::domain_error("stiffness must be positive");
  if (length < 2) throw std::invalid_argument("ring needs at least 2 sites");
  const double r = 2.0 * std::sqrt(lam1 * lam2) / (lam1 + lam2);
  return std::pow(r, 0.5 * (length - 1));
}

std::vector<std::pair<int, double>> overlap_series(
    double lam1, double lam2, const std::vector<int>& l_list) {
  std::vector<std::pair<int, double>> out;
  out.reserve(l_list.size());
  for (int l : l_list) {
    GaussianState s1(l, lam1), s2(l, lam2);
    out.emplace_back(l, gaussian_overlap(s1, s2));
  }
  return out;
}

fidelity::GFactorEstimate oracle_g(double lam1, double lam2,
                                   const std::vector<int>& l_list) {
  return fidelity::fit_series(overlap_series(lam1, lam2, l_list));
}

}  // namespace gfactor::gaussian
