#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace gfactor {

using Config = std::uint32_t;

/// Ordered bit-string basis of a spin-1/2 chain, either the full 2^L space
/// or one magnetization sector (fixed number of up spins).  Bit i of a
/// configuration is the spin at site i, bit value 1 = up.  States are stored
/// in increasing integer order, so rank lookup is a binary search in sector
/// mode and the identity in full mode.
class SectorBasis {
 public:
  static SectorBasis sector(int length, int n_up);
  static SectorBasis full(int length);

  int length() const { return length_; }
  bool is_full() const { return full_; }
  int n_up() const { return n_up_; }  // -1 in full mode
  std::size_t dim() const { return dim_; }

  Config state(std::size_t index) const;

  /// Index of `config` in the basis; throws std::out_of_range if absent.
  std::size_t rank_of(Config config) const;

  bool contains(Config config) const;

 private:
  SectorBasis() = default;

  int length_ = 0;
  int n_up_ = -1;
  bool full_ = false;
  std::size_t dim_ = 0;
  std::vector<Config> states_;  // empty in full mode
};

/// One-site translation i -> i+1 (cyclic) acting on basis amplitudes.
template <class Scalar>
void translate_state(const SectorBasis& basis,
                     const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& in,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out);

/// Projects onto the translation eigenspace with eigenvalue sign (+1 or -1),
/// i.e. v <- (1/L) sum_j sign^j T^j v.  Does not renormalize.
template <class Scalar>
void project_momentum(const SectorBasis& basis, int sign,
                      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v);

/// Zeroes amplitudes whose configuration parity (-1)^popcount differs from
/// sign.  Does not renormalize.
template <class Scalar>
void project_parity(const SectorBasis& basis, int sign,
                    Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v);

std::uint64_t binomial(int n, int k);

}  // namespace gfactor
