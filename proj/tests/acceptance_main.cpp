// Acceptance suite: runs every criterion at its stated tolerance and runtime
// budget, printing one PASS/FAIL line per criterion.  Exit code is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gfactor/bcft.hpp"
#include "gfactor/cft2d.hpp"
#include "gfactor/fidelity.hpp"
#include "gfactor/gaussian_oracle.hpp"
#include "gfactor/runners.hpp"
#include "gfactor/vertex6.hpp"
#include "reference_oracles.hpp"

namespace bcft = gfactor::bcft;
namespace cft2d = gfactor::cft2d;
namespace fid = gfactor::fidelity;
namespace gaussian = gfactor::gaussian;
namespace v6 = gfactor::vertex6;
using gfactor::Boundary;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string what;
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

void finish(Criterion& c, Clock::time_point t0) {
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (c.seconds > c.budget_seconds) {
    c.ok = false;
    c.detail += " [over runtime budget]";
  }
  std::printf("[%s] criterion %d: %s  (worst %.3g, %.1fs of %.0fs budget)%s\n",
              c.ok ? "PASS" : "FAIL", c.id, c.what.c_str(), c.worst, c.seconds,
              c.budget_seconds, c.detail.c_str());
  std::fflush(stdout);
}

Criterion criterion1_gaussian_oracle() {
  Criterion c{1, "Gaussian oracle: fitted ln g and f match ln g_critical to 1e-10"};
  c.budget_seconds = 10.0;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20080514);
  std::uniform_real_distribution<double> dist(0.05, 2.0);
  const std::vector<int> sizes = {8, 16, 24, 32, 40, 48, 56, 64};
  for (int pair = 0; pair < 20; ++pair) {
    const double l1 = dist(rng), l2 = dist(rng);
    const auto est = gaussian::oracle_g(l1, l2, sizes);
    const double expected = std::log(bcft::g_critical(l1, l2));
    c.worst = std::max({c.worst, std::abs(est.ln_g - expected),
                        std::abs(est.f - expected)});
  }
  c.ok = c.worst <= 1e-10;
  finish(c, t0);
  return c;
}

Criterion criterion2_xxz_critical() {
  Criterion c{2, "XXZ critical-critical g within 2% (5% at |delta2|=0.8) of BCFT"};
  c.budget_seconds = 1200.0;
  const auto t0 = Clock::now();
  gfactor::cli::SweepRequest req;
  req.delta1 = 0.2;
  req.delta2s = {-0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8};
  req.bc = Boundary::periodic;
  req.l_list = {8, 10, 12, 14, 16, 18};
  req.workers = 1;
  const auto sweeps = gfactor::cli::run_parallel_sweep(req);
  const double lam1 = bcft::lambda_of_delta(req.delta1).lam;
  for (const auto& series : sweeps) {
    if (!series.all_converged()) {
      c.ok = false;
      c.detail += " solver failure at delta2=" + std::to_string(series.delta2);
      continue;
    }
    const auto est = fid::extract_g(series);
    const double target =
        bcft::g_critical(lam1, bcft::lambda_of_delta(series.delta2).lam);
    const double rel = std::abs(est.g() / target - 1.0);
    const double tol = (std::abs(series.delta2) > 0.7) ? 0.05 : 0.02;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "\n    delta2=%+.1f g=%.6f bcft=%.6f rel=%.4f",
                  series.delta2, est.g(), target, rel);
    c.detail += buf;
    c.worst = std::max(c.worst, rel - tol);
    if (rel > tol) c.ok = false;
  }
  finish(c, t0);
  return c;
}

Criterion criterion3_toroidal() {
  Criterion c{3, "toroidal bc: |extracted g - 1| <= 0.05 for |delta2| <= 0.6"};
  c.budget_seconds = 900.0;
  const auto t0 = Clock::now();
  gfactor::cli::SweepRequest req;
  req.delta1 = 0.2;
  req.delta2s = {-0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6};
  req.bc = Boundary::toroidal;
  req.theta = 0.0;
  req.l_list = {8, 10, 12, 14};
  req.workers = 1;
  const auto sweeps = gfactor::cli::run_parallel_sweep(req);
  for (const auto& series : sweeps) {
    if (!series.all_converged()) {
      c.ok = false;
      c.detail += " solver failure at delta2=" + std::to_string(series.delta2);
      continue;
    }
    const auto est = fid::extract_g(series);
    const double dev = std::abs(est.g() - 1.0);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "\n    delta2=%+.1f g=%.6f |g-1|=%.4f",
                  series.delta2, est.g(), dev);
    c.detail += buf;
    c.worst = std::max(c.worst, dev);
    if (dev > 0.05) c.ok = false;
  }
  finish(c, t0);
  return c;
}

Criterion criterion4_massive() {
  Criterion c{4, "critical-massive g within 10% of sqrt(2) K^{1/4}"};
  c.budget_seconds = 600.0;
  const auto t0 = Clock::now();
  gfactor::cli::SweepRequest req;
  req.delta1 = 10.0;
  req.delta2s = {-0.5, 0.0, 0.5};
  req.bc = Boundary::periodic;
  req.l_list = {8, 10, 12, 14, 16, 18};
  req.workers = 1;
  const auto sweeps = gfactor::cli::run_parallel_sweep(req);
  for (const auto& series : sweeps) {
    if (!series.all_converged()) {
      c.ok = false;
      c.detail += " solver failure at delta2=" + std::to_string(series.delta2);
      continue;
    }
    const auto est = fid::extract_g(series);
    const double target =
        bcft::g_critical_massive(bcft::lambda_of_delta(series.delta2).k);
    const double rel = std::abs(est.g() / target - 1.0);
    char buf[112];
    std::snprintf(buf, sizeof(buf), "\n    delta2=%+.1f g=%.6f bcft=%.6f rel=%.4f",
                  series.delta2, est.g(), target, rel);
    c.detail += buf;
    c.worst = std::max(c.worst, rel);
    if (rel > 0.10) c.ok = false;
  }
  finish(c, t0);
  return c;
}

Criterion criterion5_folding() {
  Criterion c{5, "folding identity g_D(lam_D) g_N(lam_N) = g_critical to 1e-13"};
  c.budget_seconds = 1.0;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> dist(0.01, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double l1 = dist(rng), l2 = dist(rng);
    const double lhs =
        bcft::g_dirichlet(l1 * l2 / (l1 + l2)) * bcft::g_neumann(l1 + l2);
    c.worst = std::max(c.worst, std::abs(lhs - bcft::g_critical(l1, l2)));
  }
  c.ok = c.worst <= 1e-13;
  finish(c, t0);
  return c;
}

Criterion criterion6_instanton() {
  Criterion c{6, "instanton sums: factorization, duality, q->0, 21x21 surface"};
  c.budget_seconds = 5.0;
  const auto t0 = Clock::now();
  const double kPi = 3.14159265358979323846;
  const double q = std::exp(-2.0 * kPi);

  double worst_fact = 0.0;
  for (double lam : {0.05, 0.08, 0.12, 0.2})
    worst_fact = std::max(worst_fact,
                          std::abs(cft2d::instanton_sum(lam, q) -
                                   reference::instanton_double_sum(lam, q, 40)));
  if (worst_fact > 1e-13) c.ok = false;

  double worst_dual = 0.0;
  for (double lam : {0.01, 0.04, 0.08, 0.16, 0.5})
    worst_dual = std::max(
        worst_dual, std::abs(cft2d::instanton_sum(lam, q) -
                             cft2d::instanton_sum(1.0 / (4 * kPi * kPi * lam), q)));
  if (worst_dual > 1e-12) c.ok = false;

  double worst_q0 = 0.0;
  for (double lam : {0.05, 0.1, 0.2})
    worst_q0 = std::max(worst_q0, std::abs(cft2d::instanton_sum(lam, 1e-120) - 1.0));
  if (worst_q0 > 1e-13) c.ok = false;

  double worst_surface = 0.0;
  const int n = 21;
  for (int i = 0; i < n; ++i) {
    const double ci = 0.1 + (1.31 - 0.1) * i / (n - 1);
    worst_surface =
        std::max(worst_surface, std::abs(cft2d::g_eight_vertex(ci, ci, 1.0) - 1.0));
    for (int j = 0; j < n; ++j) {
      const double cj = 0.1 + (1.31 - 0.1) * j / (n - 1);
      worst_surface = std::max(worst_surface,
                               std::abs(cft2d::g_eight_vertex(ci, cj, 1.0) -
                                        cft2d::g_eight_vertex(cj, ci, 1.0)));
    }
  }
  if (worst_surface > 1e-14) c.ok = false;

  c.worst = std::max({worst_fact, worst_dual, worst_q0, worst_surface});
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                " fact=%.2g dual=%.2g q0=%.2g surface=%.2g", worst_fact,
                worst_dual, worst_q0, worst_surface);
  c.detail += buf;
  finish(c, t0);
  return c;
}

Criterion criterion7_six_vertex() {
  Criterion c{7, "six-vertex transfer matrix exact vs enumeration, CS bound"};
  c.budget_seconds = 30.0;
  const auto t0 = Clock::now();
  int lattices = 0;
  for (int l1 = 2; l1 <= 6; ++l1)
    for (int l2 = 2; l2 <= 6; ++l2) {
      if (l1 * l2 > 16) continue;
      v6::VertexLattice lat(l1, l2);
      if (v6::z2d_coefficients(lat) != v6::enumeration_histogram(lat)) {
        c.ok = false;
        c.detail += " mismatch at " + std::to_string(l1) + "x" + std::to_string(l2);
      }
      ++lattices;
    }
  c.detail += " (" + std::to_string(lattices) + " lattices)";

  v6::VertexLattice lat(4, 4);
  for (double cw = 0.3; cw < 1.45; cw += 0.115) {
    const double diag = v6::lattice_fidelity(lat, cw, cw);
    c.worst = std::max(c.worst, std::abs(diag - 1.0));
    for (double cp = 0.3; cp < 1.45; cp += 0.115) {
      const double f = v6::lattice_fidelity(lat, cw, cp);
      if (std::abs(cw - cp) > 1e-9 && f >= 1.0) {
        c.ok = false;
        c.detail += " CS equality off the diagonal";
      }
      if (f > 1.0) c.ok = false;
    }
  }
  if (c.worst > 1e-12) c.ok = false;
  finish(c, t0);
  return c;
}

Criterion criterion8_equal_parameter() {
  Criterion c{8, "equal-parameter identity F(delta, delta) = 1 to 1e-12"};
  c.budget_seconds = 120.0;
  const auto t0 = Clock::now();
  struct Case {
    double delta;
    Boundary bc;
    double theta;
  };
  std::vector<Case> cases;
  for (double d : {-0.5, 0.2, 0.8}) {
    cases.push_back({d, Boundary::periodic, 0.0});
    cases.push_back({d, Boundary::toroidal, 0.0});
    cases.push_back({d, Boundary::twisted, 0.9});
  }
  cases.push_back({4.0, Boundary::periodic, 0.0});  // massive, quasi-degenerate
  for (const auto& k : cases) {
    const auto series =
        fid::fidelity_series(k.delta, k.delta, k.bc, k.theta, {8, 10, 12});
    for (const auto& pt : series.points) {
      if (!pt.converged) {
        c.ok = false;
        c.detail += " solver failure";
        continue;
      }
      c.worst = std::max(c.worst, std::abs(pt.fidelity - 1.0));
    }
  }
  c.ok = c.ok && c.worst <= 1e-12;
  finish(c, t0);
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(criterion1_gaussian_oracle());
  results.push_back(criterion2_xxz_critical());
  results.push_back(criterion3_toroidal());
  results.push_back(criterion4_massive());
  results.push_back(criterion5_folding());
  results.push_back(criterion6_instanton());
  results.push_back(criterion7_six_vertex());
  results.push_back(criterion8_equal_parameter());

  int failed = 0;
  for (const auto& c : results)
    if (!c.ok) ++failed;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed;
}
