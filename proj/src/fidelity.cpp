#include "gfactor/fidelity.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <stdexcept>
#include <limits>

#include "gfactor/lanczos.hpp"

namespace gfactor::fidelity {

namespace {

constexpr double kNormSlack = 1e-10;

template <class Vec>
double overlap_impl(const Vec& u, const Vec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("overlap: dimension mismatch");
  double nu = u.norm(), nv = v.norm();
  if (!(nu > 0.0) || !(nv > 0.0))
    throw std::invalid_argument("overlap: zero-norm input");
  if (std::abs(nu - 1.0) > kNormSlack || std::abs(nv - 1.0) > kNormSlack)
    std::cerr << "gfactor: overlap renormalizing non-unit inputs (norms " << nu
              << ", " << nv << ")\n";
  return std::abs(std::complex<double>(u.adjoint() * v)) / (nu * nv);
}

int ground_momentum_sign(int length) { return (length % 4 == 0) ? 1 : -1; }

template <class Scalar>
void prepare_start(const XxzParams& params, const SectorBasis& basis,
                   Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  if (params.bc == Boundary::periodic)
    project_momentum(basis, ground_momentum_sign(params.length), v);
  else if (params.bc == Boundary::toroidal)
    project_parity(basis, 1, v);
  const double n = v.norm();
  if (!(n > 1e-12))
    throw lanczos::SolverError("symmetry projection annihilated start vector");
  v /= n;
}

template <class Scalar>
void polish_state(const XxzParams& params, const SectorBasis& basis,
                  Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (params.bc == Boundary::periodic) {
    const int sign = ground_momentum_sign(params.length);
    project_momentum(basis, sign, v);
    v /= v.norm();
    Vec tv;
    translate_state(basis, v, tv);
    const double t_expect =
        lanczos::detail::real_part(Scalar(v.adjoint() * tv));
    if (std::abs(t_expect - sign) > 1e-6)
      throw lanczos::SolverError(
          "converged state is not in the expected translation sector");
  } else if (params.bc == Boundary::toroidal) {
    project_parity(basis, 1, v);
    v /= v.norm();
  }
}

template <class Scalar>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, std::pair<double, double>>
solve_impl(const XxzParams& params, const SectorBasis& basis,
           const SolverSettings& settings, std::uint64_t salt) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  params.validate();
  XxzOperator<Scalar> op(params, basis);

  Vec start = lanczos::detail::random_start<Scalar>(
      basis.dim(), derive_seed(settings.seed, salt));
  prepare_start<Scalar>(params, basis, start);

  lanczos::LanczosOptions opts;
  opts.tol = settings.tol;
  opts.max_iter = settings.max_iter;
  opts.seed = derive_seed(settings.seed, salt);
  opts.krylov_dim = settings.krylov_dim;
  auto apply = [&op](const Vec& in, Vec& out) { op.apply(in, out); };
  auto res = lanczos::ground_state<Scalar>(apply, basis.dim(), opts, &start);

  Vec v = res.vector;
  polish_state<Scalar>(params, basis, v);
  return {std::move(v), {res.energy, res.residual}};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  // splitmix64 step
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool FidelitySeries::all_converged() const {
  return std::all_of(points.begin(), points.end(),
                     [](const FidelityPoint& p) { return p.converged; });
}

double overlap(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return overlap_impl(u, v);
}

double overlap(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return overlap_impl(u, v);
}

SectorBasis pipeline_basis(const XxzParams& params) {
  return params.conserves_magnetization()
             ? SectorBasis::sector(params.length, params.length / 2)
             : SectorBasis::full(params.length);
}

GroundStateSolution solve_ground_state(const XxzParams& params,
                                       const SectorBasis& basis,
                                       const SolverSettings& settings,
                                       std::uint64_t salt) {
  auto [v, er] = solve_impl<double>(params, basis, settings, salt);
  return {std::move(v), er.first, er.second};
}

GroundStateSolutionC solve_ground_state_complex(const XxzParams& params,
                                                const SectorBasis& basis,
                                                const SolverSettings& settings,
                                                std::uint64_t salt) {
  auto [v, er] =
      solve_impl<std::complex<double>>(params, basis, settings, salt);
  return {std::move(v), er.first, er.second};
}

namespace {

void validate_series_request(double delta1, double delta2, Boundary bc,
                             double theta, const std::vector<int>& l_list) {
  if (!(delta1 > -1.0) || !(delta2 > -1.0))
    throw std::domain_error("anisotropies must lie above the ferromagnetic point -1");
  if (bc == Boundary::toroidal && (std::abs(delta1) >= 1.0 || std::abs(delta2) >= 1.0))
    throw std::domain_error("toroidal series is defined for critical anisotropies only");
  if (bc == Boundary::periodic && theta != 0.0)
    throw std::domain_error("periodic series takes no twist angle");
  if (l_list.empty()) throw std::invalid_argument("empty size list");
  int prev = 0;
  for (int l : l_list) {
    if (l < 8 || l % 2 != 0)
      throw std::invalid_argument("series sizes must be even and >= 8");
    if (l <= prev) throw std::invalid_argument("series sizes must be strictly increasing");
    prev = l;
  }
}

}  // namespace

FidelitySeries fidelity_series(double delta1, double delta2, Boundary bc,
                               double theta, const std::vector<int>& l_list,
                               const SolverSettings& settings) {
  validate_series_request(delta1, delta2, bc, theta, l_list);
  FidelitySeries series;
  series.delta1 = delta1;
  series.delta2 = delta2;
  series.bc = bc;
  series.theta = theta;
  series.settings = settings;

  const bool needs_complex = (theta != 0.0 && bc != Boundary::periodic);
  for (int l : l_list) {
    FidelityPoint pt;
    pt.length = l;
    XxzParams p1{l, delta1, bc, theta};
    XxzParams p2{l, delta2, bc, theta};
    try {
      const SectorBasis basis = pipeline_basis(p1);
      const std::uint64_t s1 = (static_cast<std::uint64_t>(l) << 8) | 1;
      const std::uint64_t s2 = (static_cast<std::uint64_t>(l) << 8) | 2;
      if (needs_complex) {
        auto a = solve_ground_state_complex(p1, basis, settings, s1);
        auto b = solve_ground_state_complex(p2, basis, settings, s2);
        pt.fidelity = overlap(a.vector, b.vector);
        pt.energy1 = a.energy;
        pt.energy2 = b.energy;
        pt.residual1 = a.residual;
        pt.residual2 = b.residual;
      } else {
        auto a = solve_ground_state(p1, basis, settings, s1);
        auto b = solve_ground_state(p2, basis, settings, s2);
        pt.fidelity = overlap(a.vector, b.vector);
        pt.energy1 = a.energy;
        pt.energy2 = b.energy;
        pt.residual1 = a.residual;
        pt.residual2 = b.residual;
      }
      pt.converged = true;
    } catch (const lanczos::SolverError& e) {
      pt.converged = false;
      pt.note = e.what();
      pt.fidelity = std::numeric_limits<double>::quiet_NaN();
    }
    series.points.push_back(std::move(pt));
  }
  return series;
}

GFactorEstimate extract_g(const FidelitySeries& series) {
  std::vector<std::pair<int, double>> pts;
  for (const FidelityPoint& p : series.points)
    if (p.converged) pts.emplace_back(p.length, p.fidelity);
  return fit_series(pts);
}

GFactorEstimate fit_series(const std::vector<std::pair<int, double>>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) throw std::invalid_argument("fit needs at least 4 points");
  std::set<int> distinct;
  for (const auto& [l, f] : points) {
    if (l <= 0) throw std::invalid_argument("fit sizes must be positive");
    if (!(f > 0.0))
      throw std::domain_error("fit rejects non-positive fidelities");
    if (f > 1.0 + 1e-9)
      throw std::domain_error("fidelity above 1 is not a valid overlap");
    distinct.insert(l);
  }
  if (distinct.size() < 3)
    throw std::invalid_argument("fit needs at least 3 distinct sizes");

  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double l = points[i].first;
    x(i, 0) = -l;
    x(i, 1) = 1.0;
    x(i, 2) = 1.0 / l;
    y(i) = std::log(points[i].second);
  }
  Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  Eigen::VectorXd r = y - x * beta;

  GFactorEstimate est;
  est.f = beta(0);
  est.ln_g = beta(1);
  est.c1 = beta(2);
  est.max_abs_residual = r.cwiseAbs().maxCoeff();
  est.n_points = n;
  est.l_min = *distinct.begin();
  est.l_max = *distinct.rbegin();
  const double dof = n - 3;
  if (dof > 0) {
    const double s2 = r.squaredNorm() / dof;
    Eigen::Matrix3d xtx_inv = (x.transpose() * x).inverse();
    est.stderr_ln_g = std::sqrt(std::max(0.0, s2 * xtx_inv(1, 1)));
  }
  return est;
}

}  // namespace gfactor::fidelity
