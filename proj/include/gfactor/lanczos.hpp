#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gfactor::lanczos {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using ApplyFn = std::function<void(const Vector<Scalar>&, Vector<Scalar>&)>;

struct LanczosOptions {
  double tol = 1e-12;
  int max_iter = 0;  // 0 = 2 * min(dim, 500)
  std::uint64_t seed = 0x2a6f1d4dULL;
  int krylov_dim = 220;             // basis size per restart cycle
  bool check_orthogonality = false; // records max Krylov-basis overlap (slow)
};

template <class Scalar>
struct LanczosResult {
  double energy = 0.0;
  Vector<Scalar> vector;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;        // operator applications consumed
  double gap_estimate = 0.0; // E1 - E0 of the last tridiagonal spectrum
  double max_ritz = 0.0;
  bool converged = false;
  std::vector<double> ritz_history;   // lowest Ritz value after each step
  double max_basis_overlap = 0.0;     // filled when check_orthogonality is set
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
class ConvergenceFailure : public SolverError {
 public:
  ConvergenceFailure(const std::string& what, LanczosResult<Scalar> best_iterate)
      : SolverError(what), best(std::move(best_iterate)) {}
  LanczosResult<Scalar> best;
};

namespace detail {

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& x) { return x.real(); }
inline double conjugate(double x) { return x; }
inline std::complex<double> conjugate(const std::complex<double>& x) {
  return std::conj(x);
}

template <class Scalar>
Vector<Scalar> random_start(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector<Scalar> v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if constexpr (std::is_same_v<Scalar, double>)
      v[i] = dist(rng);
    else
      v[i] = Scalar(dist(rng), dist(rng));
  }
  return v;
}

}  // namespace detail

/// Lanczos iteration with full reorthogonalization for the lowest eigenpair
/// of a Hermitian operator, given only its action on a vector.  Restarts from
/// the current Ritz vector when the Krylov block fills up; convergence is
/// declared on the explicit residual ||H v - E v||, not the energy alone.
template <class Scalar>
LanczosResult<Scalar> ground_state(const ApplyFn<Scalar>& apply, std::size_t dim,
                                   const LanczosOptions& opts = {},
                                   const Vector<Scalar>* start = nullptr) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (dim == 0) throw std::invalid_argument("operator dimension must be >= 1");
  if (opts.tol <= 0) throw std::invalid_argument("tolerance must be positive");

  LanczosResult<Scalar> res;
  const int max_iter =
      opts.max_iter > 0
          ? opts.max_iter
          : 2 * static_cast<int>(std::min<std::size_t>(dim, 500));

  Vector<Scalar> v;
  if (start != nullptr) {
    if (static_cast<std::size_t>(start->size()) != dim)
      throw std::invalid_argument("start vector has wrong dimension");
    v = *start;
  } else {
    v = detail::random_start<Scalar>(dim, opts.seed);
  }
  double nv = v.norm();
  if (!(nv > 0)) throw std::invalid_argument("start vector has zero norm");
  v /= nv;

  if (dim == 1) {
    Vector<Scalar> w(1);
    apply(v, w);
    res.energy = detail::real_part(Scalar(v.adjoint() * w));
    res.vector = v;
    res.residual = (w - res.energy * v).norm();
    res.iterations = 1;
    res.max_ritz = res.energy;
    res.converged = true;
    res.ritz_history.push_back(res.energy);
    return res;
  }

  const int m_cap = static_cast<int>(
      std::min<std::size_t>(dim, static_cast<std::size_t>(std::max(2, opts.krylov_dim))));
  Mat basis(dim, m_cap + 1);
  Eigen::VectorXd alpha(m_cap), beta(m_cap);
  Vector<Scalar> w(dim), ritz(dim), hx(dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> trid;

  int total = 0;
  while (true) {
    basis.col(0) = v;
    int m = 0;               // number of completed steps this cycle
    bool breakdown = false;
    double scale = 0.0;

    while (m < m_cap && total < max_iter) {
      apply(basis.col(m), w);
      ++total;
      alpha[m] = detail::real_part(Scalar(basis.col(m).adjoint() * w));
      w -= alpha[m] * basis.col(m);
      if (m > 0) w -= Scalar(beta[m - 1]) * basis.col(m - 1);
      // full reorthogonalization, two classical Gram-Schmidt passes
      for (int pass = 0; pass < 2; ++pass) {
        auto Vm = basis.leftCols(m + 1);
        w.noalias() -= Vm * (Vm.adjoint() * w).eval();
      }
      beta[m] = w.norm();
      scale = std::max({scale, std::abs(alpha[m]), beta[m]});
      ++m;
      if (opts.check_orthogonality) {
        auto Vm = basis.leftCols(m);
        Eigen::VectorXd ov = (Vm.adjoint() * basis.col(m - 1)).cwiseAbs();
        ov[m - 1] = 0.0;
        res.max_basis_overlap = std::max(res.max_basis_overlap, ov.maxCoeff());
      }
      trid.computeFromTridiagonal(alpha.head(m), beta.head(std::max(0, m - 1)),
                                  Eigen::ComputeEigenvectors);
      const double theta = trid.eigenvalues()[0];
      res.ritz_history.push_back(theta);
      res.max_ritz = trid.eigenvalues()[m - 1];
      res.gap_estimate = (m > 1) ? trid.eigenvalues()[1] - theta : 0.0;

      if (beta[m - 1] <= 1e-14 * std::max(1.0, scale)) {
        breakdown = true;
        break;
      }
      const double est = beta[m - 1] * std::abs(trid.eigenvectors()(m - 1, 0));
      if (est <= opts.tol) {
        ritz.noalias() = basis.leftCols(m) * trid.eigenvectors().col(0).cast<Scalar>();
        ritz /= ritz.norm();
        apply(ritz, hx);
        ++total;
        const double theta_x = detail::real_part(Scalar(ritz.adjoint() * hx));
        const double rnorm = (hx - theta_x * ritz).norm();
        if (rnorm <= opts.tol) {
          res.energy = theta_x;
          res.vector = ritz;
          res.residual = rnorm;
          res.iterations = total;
          res.converged = true;
          return res;
        }
      }
      basis.col(m) = w / beta[m - 1];
    }

    // cycle ended: evaluate the best Ritz pair of this block
    ritz.noalias() = basis.leftCols(m) * trid.eigenvectors().col(0).cast<Scalar>();
    ritz /= ritz.norm();
    apply(ritz, hx);
    ++total;
    const double theta_x = detail::real_part(Scalar(ritz.adjoint() * hx));
    const double rnorm = (hx - theta_x * ritz).norm();
    res.energy = theta_x;
    res.vector = ritz;
    res.residual = rnorm;
    res.iterations = total;
    if (rnorm <= opts.tol || breakdown) {
      res.converged = true;
      return res;
    }
    if (total >= max_iter) {
      res.converged = false;
      throw ConvergenceFailure<Scalar>(
          "Lanczos did not reach residual " + std::to_string(opts.tol) + " in " +
              std::to_string(total) + " operator applications (residual " +
              std::to_string(rnorm) + ")",
          res);
    }
    v = ritz;  // restart from the current iterate
  }
}

/// Two lowest eigenpairs: ground state first, then a deflated solve in the
/// orthogonal complement, followed by an exact 2x2 Rayleigh-Ritz rotation of
/// the captured subspace.  The rotation is what resolves quasi-degenerate
/// pairs whose splitting is below the reach of the Krylov polynomial.
template <class Scalar>
std::pair<LanczosResult<Scalar>, LanczosResult<Scalar>> lowest_two(
    const ApplyFn<Scalar>& apply, std::size_t dim, const LanczosOptions& opts = {},
    const Vector<Scalar>* start = nullptr) {
  if (dim < 2) throw std::invalid_argument("lowest_two needs dimension >= 2");

  LanczosResult<Scalar> r0 = ground_state<Scalar>(apply, dim, opts, start);
  const Vector<Scalar> v0 = r0.vector;
  const double sigma = r0.max_ritz + std::abs(r0.max_ritz) + 1.0;

  // (I - P) H (I - P) + sigma P  with  P = |v0><v0|
  ApplyFn<Scalar> deflated = [&](const Vector<Scalar>& x, Vector<Scalar>& y) {
    Vector<Scalar> xp = x - v0 * Scalar(v0.adjoint() * x);
    apply(xp, y);
    y -= v0 * Scalar(v0.adjoint() * y);
    y += sigma * (v0 * Scalar(v0.adjoint() * x));
  };
  LanczosOptions o1 = opts;
  o1.seed = opts.seed ^ 0x9e3779b97f4a7c15ULL;
  LanczosResult<Scalar> r1 = ground_state<Scalar>(deflated, dim, o1);
  if (std::abs(Scalar(v0.adjoint() * r1.vector)) > 0.5)
    throw SolverError("deflated solve collapsed onto the ground state");

  // exact Rayleigh-Ritz in span{v0, v1}
  Vector<Scalar> u1 = r1.vector - v0 * Scalar(v0.adjoint() * r1.vector);
  u1 /= u1.norm();
  Vector<Scalar> h0(dim), h1(dim);
  apply(v0, h0);
  apply(u1, h1);
  const double a = detail::real_part(Scalar(v0.adjoint() * h0));
  const double c = detail::real_part(Scalar(u1.adjoint() * h1));
  const Scalar b = Scalar(v0.adjoint() * h1);
  Eigen::Matrix<Scalar, 2, 2> h2;
  h2(0, 0) = Scalar(a);
  h2(0, 1) = b;
  h2(1, 0) = detail::conjugate(b);
  h2(1, 1) = Scalar(c);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 2, 2>> es(h2);

  auto assemble = [&](int which) {
    LanczosResult<Scalar> out;
    const auto y = es.eigenvectors().col(which);
    out.vector = v0 * y(0) + u1 * y(1);
    out.vector /= out.vector.norm();
    Vector<Scalar> hv = h0 * y(0) + h1 * y(1);
    out.energy = es.eigenvalues()[which];
    out.residual = (hv - Scalar(out.energy) * out.vector).norm();
    out.iterations = r0.iterations + r1.iterations + 2;
    out.gap_estimate = es.eigenvalues()[1] - es.eigenvalues()[0];
    out.max_ritz = std::max(r0.max_ritz, r1.max_ritz);
    out.converged = true;
    return out;
  };
  LanczosResult<Scalar> lo = assemble(0);
  LanczosResult<Scalar> hi = assemble(1);
  lo.ritz_history = r0.ritz_history;
  hi.ritz_history = r1.ritz_history;
  return {std::move(lo), std::move(hi)};
}

}  // namespace gfactor::lanczos
