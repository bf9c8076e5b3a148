#include "gfactor/bcft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gfactor::bcft {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double lam, const char* what) {
  if (!(lam > 0.0))
    throw std::domain_error(std::string(what) + " must be positive");
}
}  // namespace

Coupling coupling_from_lambda(double lam) {
  require_positive(lam, "stiffness");
  return {lam, 1.0 / (4.0 * kPi * lam)};
}

Coupling coupling_from_k(double k) {
  require_positive(k, "Luttinger parameter");
  return {1.0 / (4.0 * kPi * k), k};
}

Coupling lambda_of_delta(double delta) {
  if (!(delta > -1.0) || !(delta <= 1.0))
    throw std::domain_error("anisotropy outside the critical region (-1, 1]");
  return coupling_from_lambda((kPi - std::acos(delta)) / (2.0 * kPi * kPi));
}

double g_critical(double lam1, double lam2) {
  require_positive(lam1, "stiffness");
  require_positive(lam2, "stiffness");
  return std::sqrt((lam1 + lam2) / (2.0 * std::sqrt(lam1 * lam2)));
}

double g_dirichlet(double lam) {
  require_positive(lam, "stiffness");
  return std::pow(kPi * lam, -0.25) / std::sqrt(2.0);
}

double g_neumann(double lam) {
  require_positive(lam, "stiffness");
  return std::pow(kPi * lam, 0.25);
}

double g_critical_massive(double k) {
  require_positive(k, "Luttinger parameter");
  return std::sqrt(2.0) * std::pow(k, 0.25);
}

}  // namespace gfactor::bcft
