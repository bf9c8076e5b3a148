#include "gfactor/xxz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gfactor {

const char* boundary_name(Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return "periodic";
    case Boundary::twisted: return "twisted";
    case Boundary::toroidal: return "toroidal";
  }
  return "?";
}

Boundary boundary_from_name(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "twisted") return Boundary::twisted;
  if (name == "toroidal") return Boundary::toroidal;
  throw std::invalid_argument("unknown boundary condition '" + name + "'");
}

void XxzParams::validate() const {
  if (length < 4 || length > 24 || length % 2 != 0)
    throw std::invalid_argument("XXZ length must be even and in [4, 24]");
  if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (bc == Boundary::periodic && theta != 0.0)
    throw std::invalid_argument("periodic boundary has no twist angle");
}

std::vector<Bond> bond_list(const XxzParams& params) {
  params.validate();
  std::vector<Bond> bonds;
  bonds.reserve(params.length);
  for (int i = 0; i + 1 < params.length; ++i)
    bonds.push_back({i, i + 1, BondKind::plain});
  BondKind seam = BondKind::plain;
  if (params.bc == Boundary::twisted) seam = BondKind::twisted_seam;
  if (params.bc == Boundary::toroidal) seam = BondKind::toroidal_seam;
  bonds.push_back({params.length - 1, 0, seam});
  return bonds;
}

template <class Scalar>
XxzOperator<Scalar>::XxzOperator(const XxzParams& params, const SectorBasis& basis)
    : params_(params), basis_(basis), bonds_(bond_list(params)) {
  if (basis.length() != params.length)
    throw std::invalid_argument("basis length does not match XXZ parameters");
  if (params.bc == Boundary::toroidal && !basis.is_full())
    throw std::invalid_argument("toroidal boundary needs the full 2^L basis");
  // sx sx + sy sy = 2 (s+ s- + s- s+); the seam substitution keeps the factor 2.
  if constexpr (std::is_same_v<Scalar, double>) {
    if (params.needs_complex())
      throw std::invalid_argument("theta != 0 requires complex scalars");
    hop_fwd_ = hop_bwd_ = pair_up_ = pair_down_ = 2.0;
  } else {
    const std::complex<double> ph = std::polar(1.0, params.theta);
    hop_fwd_ = 2.0 * ph;             // 2 e^{+i theta} s+_{L-1} s-_0
    hop_bwd_ = 2.0 * std::conj(ph);  // 2 e^{-i theta} s-_{L-1} s+_0
    pair_up_ = 2.0 * std::conj(ph);  // 2 e^{-i theta} s+_{L-1} s+_0
    pair_down_ = 2.0 * ph;           // 2 e^{+i theta} s-_{L-1} s-_0
  }
}

template <class Scalar>
void XxzOperator<Scalar>::apply(const Vector& in, Vector& out) const {
  const std::size_t d = basis_.dim();
  if (static_cast<std::size_t>(in.size()) != d)
    throw std::invalid_argument("vector dimension does not match basis");
  out.setZero(in.size());

  const double delta = params_.delta;
  for (std::size_t k = 0; k < d; ++k) {
    const Config s = basis_.state(k);
    const Scalar vk = in[k];
    double diag = 0.0;
    for (const Bond& b : bonds_) {
      const int bi = (s >> b.i) & 1;
      const int bj = (s >> b.j) & 1;
      const Config mask = (Config{1} << b.i) | (Config{1} << b.j);
      if (b.kind == BondKind::toroidal_seam) {
        diag += (bi == bj) ? -delta : delta;
        if (bi == 0 && bj == 0)
          out[basis_.rank_of(s | mask)] += pair_up_ * vk;
        else if (bi == 1 && bj == 1)
          out[basis_.rank_of(s & ~mask)] += pair_down_ * vk;
      } else {
        diag += (bi == bj) ? delta : -delta;
        if (bi != bj) {
          const std::size_t r = basis_.rank_of(s ^ mask);
          if (b.kind == BondKind::twisted_seam)
            out[r] += ((bj == 1) ? hop_fwd_ : hop_bwd_) * vk;
          else
            out[r] += Scalar(2) * vk;
        }
      }
    }
    out[k] += diag * vk;
  }
}

template <class Scalar>
typename XxzOperator<Scalar>::Vector XxzOperator<Scalar>::apply(
    const Vector& in) const {
  Vector out;
  apply(in, out);
  return out;
}

template class XxzOperator<double>;
template class XxzOperator<std::complex<double>>;

}  // namespace gfactor
