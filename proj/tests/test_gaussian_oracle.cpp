#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gfactor/bcft.hpp"
#include "gfactor/gaussian_oracle.hpp"

namespace gaussian = gfactor::gaussian;

TEST_CASE("single-mode overlap from the determinant formula") {
  Eigen::MatrixXd a1(1, 1), a2(1, 1);
  a1 << 1.0;
  a2 << 2.0;
  CHECK(gaussian::overlap_from_width_matrices(a1, a2) ==
        doctest::Approx(0.97098354341464684).epsilon(1e-14));
  CHECK(gaussian::overlap_from_width_matrices(a1, a1) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("width matrix annihilates the zero mode") {
  for (int length : {4, 9, 16}) {
    gaussian::GaussianState s(length, 0.7);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(length);
    CHECK((s.width_matrix() * ones).norm() < 1e-12);
    CHECK((s.width_matrix() - s.width_matrix().transpose()).cwiseAbs().maxCoeff() <
          1e-13);
  }
}

TEST_CASE("equal couplings give unit overlap") {
  gaussian::GaussianState s1(12, 0.9), s2(12, 0.9);
  CHECK(gaussian::gaussian_overlap(s1, s2) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("determinant route equals the closed form") {
  CHECK(gaussian::gaussian_overlap(gaussian::GaussianState(16, 1.0),
                                   gaussian::GaussianState(16, 2.0)) ==
        doctest::Approx(gaussian::closed_form_overlap(1.0, 2.0, 16))
            .epsilon(1e-12));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(0.05, 3.0);
  for (int length : {2, 3, 8, 21, 40, 64}) {
    const double l1 = dist(rng), l2 = dist(rng);
    gaussian::GaussianState s1(length, l1), s2(length, l2);
    CHECK(std::abs(gaussian::gaussian_overlap(s1, s2) -
                   gaussian::closed_form_overlap(l1, l2, length)) < 1e-12);
  }
}

TEST_CASE("overlap depends only on the coupling ratio") {
  for (double scale : {0.3, 2.0, 7.5}) {
    gaussian::GaussianState a1(20, 1.0), a2(20, 2.5);
    gaussian::GaussianState b1(20, scale), b2(20, 2.5 * scale);
    CHECK(gaussian::gaussian_overlap(a1, a2) ==
          doctest::Approx(gaussian::gaussian_overlap(b1, b2)).epsilon(1e-12));
  }
}

TEST_CASE("oracle_g recovers the closed-form g and f = ln g with no 1/L term") {
  const std::vector<int> sizes = {8, 16, 24, 32, 40, 48, 56, 64};
  auto est = gaussian::oracle_g(1.0, 2.0, sizes);
  CHECK(est.g() == doctest::Approx(1.0298835719535589).epsilon(1e-10));
  CHECK(est.ln_g == doctest::Approx(0.029445758914095864).epsilon(1e-10));
  CHECK(std::abs(est.f - est.ln_g) < 1e-10);
  CHECK(std::abs(est.c1) < 1e-8);
  CHECK(est.max_abs_residual < 1e-12);

  auto same = gaussian::oracle_g(1.3, 1.3, sizes);
  CHECK(std::abs(same.ln_g) < 1e-13);
  CHECK(std::abs(same.f) < 1e-14);

  auto quad = gaussian::oracle_g(1.0, 4.0, sizes);
  CHECK(quad.g() == doctest::Approx(std::sqrt(1.25)).epsilon(1e-10));
}

TEST_CASE("end to end against bcft::g_critical") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(0.05, 2.0);
  const std::vector<int> sizes = {8, 16, 24, 32, 40, 48, 56, 64};
  for (int rep = 0; rep < 5; ++rep) {
    const double l1 = dist(rng), l2 = dist(rng);
    auto est = gaussian::oracle_g(l1, l2, sizes);
    const double expected = std::log(gfactor::bcft::g_critical(l1, l2));
    CHECK(std::abs(est.ln_g - expected) < 1e-10);
    CHECK(std::abs(est.f - expected) < 1e-10);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(gaussian::GaussianState(8, 0.0), std::domain_error);
  CHECK_THROWS_AS(gaussian::GaussianState(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian::gaussian_overlap(gaussian::GaussianState(8, 1.0),
                                             gaussian::GaussianState(10, 1.0)),
                  std::invalid_argument);
  Eigen::MatrixXd square(2, 2), rect(2, 3);
  square.setIdentity();
  rect.setZero();
  CHECK_THROWS_AS(gaussian::overlap_from_width_matrices(square, rect),
                  std::invalid_argument);
  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(gaussian::overlap_from_width_matrices(indef, indef),
                  std::domain_error);
}
