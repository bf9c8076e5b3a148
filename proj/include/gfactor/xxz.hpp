#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gfactor/spin_basis.hpp"

namespace gfactor {

enum class Boundary { periodic, twisted, toroidal };

const char* boundary_name(Boundary bc);
Boundary boundary_from_name(const std::string& name);

/// XXZ chain H = sum_i [sx_i sx_{i+1} + sy_i sy_{i+1} + delta sz_i sz_{i+1}]
/// in Pauli-matrix normalization, site L+1 identified according to bc:
///   periodic   sigma_{L+1} = sigma_1
///   twisted    hopping across the seam picks up a phase e^{+-i theta}
///   toroidal   sigma^{+-}_{L+1} = e^{+-i theta} sigma^{-+}_1,
///              sigma^z_{L+1} = -sigma^z_1  (magnetization kept only mod 2)
struct XxzParams {
  int length = 8;
  double delta = 0.0;
  Boundary bc = Boundary::periodic;
  double theta = 0.0;

  void validate() const;
  bool conserves_magnetization() const { return bc != Boundary::toroidal; }
  bool needs_complex() const { return theta != 0.0 && bc != Boundary::periodic; }
};

enum class BondKind { plain, twisted_seam, toroidal_seam };

struct Bond {
  int i = 0;
  int j = 0;
  BondKind kind = BondKind::plain;
};

/// The L bonds of the ring; bond (L-1, 0) carries the boundary decoration.
std::vector<Bond> bond_list(const XxzParams& params);

/// Matrix-free H*v.  Sector bases are accepted for magnetization-conserving
/// boundary conditions only; toroidal requires the full 2^L basis.  theta != 0
/// on a twisted/toroidal seam requires Scalar = std::complex<double>.
template <class Scalar>
class XxzOperator {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  XxzOperator(const XxzParams& params, const SectorBasis& basis);

  void apply(const Vector& in, Vector& out) const;
  Vector apply(const Vector& in) const;

  const XxzParams& params() const { return params_; }
  const SectorBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }

 private:
  XxzParams params_;
  const SectorBasis& basis_;
  std::vector<Bond> bonds_;
  Scalar hop_fwd_{}, hop_bwd_{};    // twisted seam amplitudes
  Scalar pair_up_{}, pair_down_{};  // toroidal seam amplitudes
};

extern template class XxzOperator<double>;
extern template class XxzOperator<std::complex<double>>;

}  // namespace gfactor
