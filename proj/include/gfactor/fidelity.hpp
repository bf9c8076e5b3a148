#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gfactor/spin_basis.hpp"
#include "gfactor/xxz.hpp"

namespace gfactor::fidelity {

struct SolverSettings {
  double tol = 1e-12;
  int max_iter = 0;  // 0 = solver default
  std::uint64_t seed = 20080514;
  int krylov_dim = 220;
};

struct FidelityPoint {
  int length = 0;
  double fidelity = 0.0;
  double energy1 = 0.0;
  double energy2 = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  bool converged = false;
  std::string note;  // failure annotation, empty on success
};

/// Finite-size fidelity samples for one (delta1, delta2, bc) parameter pair.
struct FidelitySeries {
  double delta1 = 0.0;
  double delta2 = 0.0;
  Boundary bc = Boundary::periodic;
  double theta = 0.0;
  std::vector<FidelityPoint> points;
  SolverSettings settings;

  bool all_converged() const;
};

/// Result of the finite-size fit  ln F(L) = -f L + ln g + c1 / L.
struct GFactorEstimate {
  double ln_g = 0.0;
  double f = 0.0;
  double c1 = 0.0;
  double stderr_ln_g = 0.0;
  double max_abs_residual = 0.0;
  int l_min = 0;
  int l_max = 0;
  int n_points = 0;

  double g() const { return std::exp(ln_g); }
};

/// |<u, v>|.  Inputs are expected unit-norm to 1e-10; anything worse is
/// renormalized with a warning on stderr.
double overlap(const Eigen::VectorXd& u, const Eigen::VectorXd& v);
double overlap(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

struct GroundStateSolution {
  Eigen::VectorXd vector;
  double energy = 0.0;
  double residual = 0.0;
};
struct GroundStateSolutionC {
  Eigen::VectorXcd vector;
  double energy = 0.0;
  double residual = 0.0;
};

/// Ground state of an XXZ chain, stabilized by symmetry-adapted start
/// vectors: periodic chains are solved in the translation sector
/// (-1)^(L/2) that holds the ground state at every delta > -1, toroidal
/// chains in the even (-1)^(n_up) parity sector (the toroidal spectrum is
/// doubly degenerate across the two parity sectors, which give identical
/// fidelities).  `salt` individualizes the random start.
GroundStateSolution solve_ground_state(const XxzParams& params,
                                       const SectorBasis& basis,
                                       const SolverSettings& settings,
                                       std::uint64_t salt);
GroundStateSolutionC solve_ground_state_complex(const XxzParams& params,
                                                const SectorBasis& basis,
                                                const SolverSettings& settings,
                                                std::uint64_t salt);

/// Basis used by the fidelity pipeline for the given boundary condition:
/// the n_up = L/2 sector when magnetization is conserved, else the full space.
SectorBasis pipeline_basis(const XxzParams& params);

/// One fidelity point per L.  Solver failures are annotated on the affected
/// point rather than dropped.
FidelitySeries fidelity_series(double delta1, double delta2, Boundary bc,
                               double theta, const std::vector<int>& l_list,
                               const SolverSettings& settings = {});

/// Least-squares fit of ln F against [-L, 1, 1/L]; needs >= 4 converged
/// points over >= 3 distinct sizes, every F in (0, 1].
GFactorEstimate extract_g(const FidelitySeries& series);
GFactorEstimate fit_series(const std::vector<std::pair<int, double>>& points);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace gfactor::fidelity
