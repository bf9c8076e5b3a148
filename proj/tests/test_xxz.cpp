#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gfactor/xxz.hpp"
#include "test_support.hpp"

using gfactor::Boundary;
using gfactor::BondKind;
using gfactor::SectorBasis;
using gfactor::XxzOperator;
using gfactor::XxzParams;

TEST_CASE("bond_list layout") {
  XxzParams p{4, 0.5, Boundary::periodic, 0.0};
  auto bonds = gfactor::bond_list(p);
  REQUIRE(bonds.size() == 4);
  CHECK(bonds[0].i == 0);
  CHECK(bonds[0].j == 1);
  CHECK(bonds[3].i == 3);
  CHECK(bonds[3].j == 0);
  for (const auto& b : bonds) CHECK(b.kind == BondKind::plain);

  p.bc = Boundary::toroidal;
  bonds = gfactor::bond_list(p);
  CHECK(bonds[3].kind == BondKind::toroidal_seam);
  for (int i = 0; i < 3; ++i) CHECK(bonds[i].kind == BondKind::plain);

  p.bc = Boundary::twisted;
  p.theta = 0.3;
  CHECK(gfactor::bond_list(p)[3].kind == BondKind::twisted_seam);
}

TEST_CASE("aligned configuration is diagonal") {
  const double delta = 0.7;
  const auto basis = SectorBasis::full(4);
  XxzOperator<double> op({4, delta, Boundary::periodic, 0.0}, basis);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
  v[basis.rank_of(0b1111)] = 1.0;
  Eigen::VectorXd hv = op.apply(v);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(16);
  expected[basis.rank_of(0b1111)] = 4.0 * delta;
  CHECK((hv - expected).norm() < 1e-14);
}

TEST_CASE("Neel configuration expands into four pair flips") {
  const double delta = 0.7;
  const auto basis = SectorBasis::full(4);
  XxzOperator<double> op({4, delta, Boundary::periodic, 0.0}, basis);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
  v[basis.rank_of(0b0101)] = 1.0;
  Eigen::VectorXd hv = op.apply(v);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(16);
  expected[basis.rank_of(0b0101)] = -4.0 * delta;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    const gfactor::Config flipped = 0b0101u ^ (1u << i) ^ (1u << j);
    expected[basis.rank_of(flipped)] += 2.0;
  }
  CHECK((hv - expected).norm() < 1e-14);
}

TEST_CASE("Heisenberg point ground energy at L=4 is -8") {
  const auto basis = SectorBasis::full(4);
  XxzOperator<double> op({4, 1.0, Boundary::periodic, 0.0}, basis);
  auto h = testsupport::dense_from_apply<double>(
      [&op](const Eigen::VectorXd& in, Eigen::VectorXd& out) { op.apply(in, out); },
      16);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  CHECK(es.eigenvalues()[0] == doctest::Approx(-8.0).epsilon(1e-12));
}

TEST_CASE("toroidal seam: diagonal and double flip at L=4") {
  const double delta = 0.7;
  const auto basis = SectorBasis::full(4);
  XxzOperator<double> op({4, delta, Boundary::toroidal, 0.0}, basis);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
  v[basis.rank_of(0b1111)] = 1.0;
  Eigen::VectorXd hv = op.apply(v);
  // three plain bonds keep +delta, the seam Ising term is sign-flipped
  CHECK(hv[basis.rank_of(0b1111)] == doctest::Approx(2.0 * delta));
  // seam sigma-_3 sigma-_0 lowers both seam spins with amplitude 2
  CHECK(hv[basis.rank_of(0b0110)] == doctest::Approx(2.0));
  // no single-flip amplitudes anywhere
  for (std::size_t k = 0; k < 16; ++k)
    if (k != basis.rank_of(0b1111) && k != basis.rank_of(0b0110))
      CHECK(hv[k] == 0.0);
}

TEST_CASE("apply agrees with the Pauli-product dense matrix") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> delta_dist(-1.0, 4.0);
  for (int length : {4, 6, 8}) {
    for (Boundary bc :
         {Boundary::periodic, Boundary::twisted, Boundary::toroidal}) {
      for (double theta : {0.0, 0.9}) {
        if (bc == Boundary::periodic && theta != 0.0) continue;
        XxzParams p{length, delta_dist(rng), bc, theta};
        const auto basis = SectorBasis::full(length);
        XxzOperator<std::complex<double>> op(p, basis);
        auto h = testsupport::dense_from_apply<std::complex<double>>(
            [&op](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
              op.apply(in, out);
            },
            basis.dim());
        auto href = testsupport::dense_xxz_pauli(p);
        CHECK((h - href).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("hermiticity on random vectors") {
  std::mt19937_64 rng(11);
  for (Boundary bc : {Boundary::twisted, Boundary::toroidal}) {
    XxzParams p{8, 1.7, bc, 0.9};
    const auto basis = SectorBasis::full(8);
    XxzOperator<std::complex<double>> op(p, basis);
    for (int rep = 0; rep < 5; ++rep) {
      auto u = testsupport::random_unit_vector<std::complex<double>>(basis.dim(),
                                                                     rng());
      auto v = testsupport::random_unit_vector<std::complex<double>>(basis.dim(),
                                                                     rng());
      const std::complex<double> a = u.adjoint() * op.apply(v);
      const std::complex<double> b = v.adjoint() * op.apply(u);
      CHECK(std::abs(a - std::conj(b)) < 1e-12);
    }
  }
}

TEST_CASE("magnetization sector is preserved") {
  const auto basis = SectorBasis::sector(8, 4);
  XxzOperator<double> op({8, 0.3, Boundary::periodic, 0.0}, basis);
  auto v = testsupport::random_unit_vector<double>(basis.dim(), 99);
  Eigen::VectorXd hv = op.apply(v);
  CHECK(hv.allFinite());
  // the same state embedded in the full space stays supported on the sector
  const auto full = SectorBasis::full(8);
  XxzOperator<double> fop({8, 0.3, Boundary::periodic, 0.0}, full);
  Eigen::VectorXd fv = Eigen::VectorXd::Zero(full.dim());
  for (std::size_t k = 0; k < basis.dim(); ++k)
    fv[full.rank_of(basis.state(k))] = v[k];
  Eigen::VectorXd fhv = fop.apply(fv);
  for (std::size_t k = 0; k < full.dim(); ++k)
    if (!basis.contains(full.state(k))) CHECK(fhv[k] == 0.0);
  // and the two applications agree entry by entry
  for (std::size_t k = 0; k < basis.dim(); ++k)
    CHECK(fhv[full.rank_of(basis.state(k))] == doctest::Approx(hv[k]).epsilon(1e-14));
}

TEST_CASE("toroidal seam changes magnetization by two: parity conserved") {
  const auto basis = SectorBasis::full(8);
  XxzOperator<double> op({8, 0.3, Boundary::toroidal, 0.0}, basis);
  auto v = testsupport::random_unit_vector<double>(basis.dim(), 5);
  gfactor::project_parity(basis, 1, v);
  v /= v.norm();
  Eigen::VectorXd hv = op.apply(v);
  Eigen::VectorXd odd = hv;
  gfactor::project_parity(basis, -1, odd);
  CHECK(odd.norm() == 0.0);  // structurally exact, no even->odd amplitudes
}

TEST_CASE("theta zero toroidal operator is real symmetric") {
  const auto basis = SectorBasis::full(6);
  XxzOperator<double> op({6, 0.8, Boundary::toroidal, 0.0}, basis);
  auto h = testsupport::dense_from_apply<double>(
      [&op](const Eigen::VectorXd& in, Eigen::VectorXd& out) { op.apply(in, out); },
      basis.dim());
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("contract violations are rejected") {
  const auto sector = SectorBasis::sector(8, 4);
  CHECK_THROWS_AS(
      (XxzOperator<double>({8, 0.3, Boundary::toroidal, 0.0}, sector)),
      std::invalid_argument);
  CHECK_THROWS_AS((XxzOperator<double>({8, 0.3, Boundary::twisted, 0.4}, sector)),
                  std::invalid_argument);
  CHECK_THROWS_AS((XxzOperator<double>({8, 0.3, Boundary::periodic, 0.4}, sector)),
                  std::invalid_argument);
  XxzOperator<double> op({8, 0.3, Boundary::periodic, 0.0}, sector);
  Eigen::VectorXd wrong = Eigen::VectorXd::Zero(10);
  Eigen::VectorXd out;
  CHECK_THROWS_AS(op.apply(wrong, out), std::invalid_argument);
  XxzParams bad{2, 0.3, Boundary::periodic, 0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
