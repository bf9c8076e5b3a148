#include "gfactor/cft2d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gfactor::cft2d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJacobiSwitch = 0.05;

void check_nome(double q) {
  if (!(q > 0.0) || !(q < 1.0))
    throw std::domain_error("nome must lie in (0, 1)");
}

double theta_sum_plain(double a) {
  double total = 1.0;
  for (int n = 1;; ++n) {
    const double term = std::exp(-a * static_cast<double>(n) * n);
    if (term < 1e-16 * total) break;
    total += 2.0 * term;
  }
  return total;
}

}  // namespace

namespace detail {

double theta_sum_truncated(double a, int max_terms) {
  double total = 1.0;
  for (int n = 1; n <= max_terms; ++n)
    total += 2.0 * std::exp(-a * static_cast<double>(n) * n);
  return total;
}

double eta_truncated(double q, int max_terms) {
  double prod = 1.0;
  double qn = q;
  for (int n = 1; n <= max_terms; ++n) {
    prod *= (1.0 - qn);
    qn *= q;
  }
  return std::pow(q, 1.0 / 24.0) * prod;
}

}  // namespace detail

namespace {

double eta_product(double q) {
  double prod = 1.0;
  double qn = q;
  while (qn >= 1e-16) {  // factor distance from 1
    prod *= (1.0 - qn);
    qn *= q;
  }
  return std::pow(q, 1.0 / 24.0) * prod;
}

}  // namespace

double dedekind_eta(double q) {
  check_nome(q);
  if (q > 0.5) {
    // eta(e^{-2 pi t}) = t^{-1/2} eta(e^{-2 pi / t}).  For q > 0.5 the dual
    // exponent 2 pi / t exceeds 56, so the dual product is 1 to machine
    // precision and only the dual q^{1/24} prefactor survives; evaluating it
    // in log space avoids the underflow of the dual nome itself.
    const double t = -std::log(q) / (2.0 * kPi);
    return std::exp(-2.0 * kPi / (24.0 * t)) / std::sqrt(t);
  }
  return eta_product(q);
}

double theta_sum(double a) {
  if (!(a > 0.0)) throw std::domain_error("theta sum needs a > 0");
  if (a < kJacobiSwitch)
    return std::sqrt(kPi / a) * theta_sum_plain(kPi * kPi / a);
  return theta_sum_plain(a);
}

double instanton_sum(double lam, double q) {
  if (!(lam > 0.0)) throw std::domain_error("coupling must be positive");
  check_nome(q);
  const double ln_inv = -std::log(q);
  const double a_n = ln_inv / (4.0 * kPi * lam);
  const double a_m = ln_inv * kPi * lam;
  return theta_sum(a_n) * theta_sum(a_m);
}

namespace {

// The principal branch of  -cos(2 pi^2 lam) = y^2/2 - 1  is
// 2 pi^2 lam = arccos(1 - y^2/2) = 2 asin(y/2); the asin form stays accurate
// as y -> 0 where the arccos argument cancels catastrophically.
double lambda_from_weight(double y, const char* what) {
  if (!(y > 0.0) || !(y < 2.0))
    throw std::domain_error(std::string(what) +
                            " lies outside the disordered region");
  return std::asin(0.5 * y) / (kPi * kPi);
}

}  // namespace

double lambda_of_c(double c) {
  if (!(c > 0.0)) throw std::domain_error("vertex weight must be positive");
  return lambda_from_weight(c * c, "weight");
}

double lambda_of_pair(double c, double c_prime) {
  if (!(c > 0.0) || !(c_prime > 0.0))
    throw std::domain_error("vertex weights must be positive");
  return lambda_from_weight(c * c_prime, "weight product");
}

double g_eight_vertex(double c, double c_prime, double aspect) {
  const CftPoint pt = CftPoint::from_weights(c, c_prime, aspect);
  const double num = instanton_sum(pt.big_lam, pt.q);
  const double den =
      std::sqrt(instanton_sum(pt.lam, pt.q) * instanton_sum(pt.lam_prime, pt.q));
  return num / den;
}

double rectangle_universal_term(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw std::domain_error("rectangle dimensions must be positive");
  const double q = std::exp(-2.0 * kPi * l1 / l2);
  return 0.25 * std::log(l2) - 0.5 * std::log(dedekind_eta(q));
}

CftPoint CftPoint::from_weights(double c, double c_prime, double aspect) {
  if (!(aspect > 0.0)) throw std::domain_error("aspect ratio must be positive");
  CftPoint pt;
  pt.c = c;
  pt.c_prime = c_prime;
  pt.lam = lambda_of_c(c);
  pt.lam_prime = lambda_of_c(c_prime);
  pt.big_lam = lambda_of_pair(c, c_prime);
  pt.aspect = aspect;
  pt.q = std::exp(-2.0 * kPi * aspect);
  return pt;
}

}  // namespace gfactor::cft2d
