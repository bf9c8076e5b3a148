#include "gfactor/spin_basis.hpp"

#include <algorithm>
#include <bit>
#include <complex>
#include <stdexcept>
#include <string>

namespace gfactor {

namespace {

void check_length(int length) {
  if (length < 4 || length > 24)
    throw std::invalid_argument("chain length must be in [4, 24], got " +
                                std::to_string(length));
  if (length % 2 != 0)
    throw std::invalid_argument("chain length must be even, got " +
                                std::to_string(length));
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / (i + 1);
  return r;
}

SectorBasis SectorBasis::sector(int length, int n_up) {
  check_length(length);
  if (n_up < 0 || n_up > length)
    throw std::invalid_argument("n_up must be in [0, L], got " +
                                std::to_string(n_up));
  SectorBasis b;
  b.length_ = length;
  b.n_up_ = n_up;
  b.full_ = false;
  b.dim_ = binomial(length, n_up);
  b.states_.reserve(b.dim_);
  const Config top = Config{1} << length;
  for (Config s = 0; s < top; ++s)
    if (std::popcount(s) == n_up) b.states_.push_back(s);
  return b;
}

SectorBasis SectorBasis::full(int length) {
  check_length(length);
  SectorBasis b;
  b.length_ = length;
  b.n_up_ = -1;
  b.full_ = true;
  b.dim_ = std::size_t{1} << length;
  return b;
}

Config SectorBasis::state(std::size_t index) const {
  if (index >= dim_) throw std::out_of_range("basis index out of range");
  return full_ ? static_cast<Config>(index) : states_[index];
}

std::size_t SectorBasis::rank_of(Config config) const {
  if (full_) {
    if (config >= dim_) throw std::out_of_range("configuration outside chain");
    return config;
  }
  auto it = std::lower_bound(states_.begin(), states_.end(), config);
  if (it == states_.end() || *it != config)
    throw std::out_of_range("configuration not in sector");
  return static_cast<std::size_t>(it - states_.begin());
}

bool SectorBasis::contains(Config config) const {
  if (full_) return config < dim_;
  return std::binary_search(states_.begin(), states_.end(), config);
}

namespace {

inline Config rotl_bits(Config s, int length) {
  const Config mask = (Config{1} << length) - 1;
  return ((s << 1) | (s >> (length - 1))) & mask;
}

}  // namespace

template <class Scalar>
void translate_state(const SectorBasis& basis,
                     const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& in,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& out) {
  const std::size_t d = basis.dim();
  if (static_cast<std::size_t>(in.size()) != d)
    throw std::invalid_argument("vector dimension does not match basis");
  out.resize(in.size());
  for (std::size_t k = 0; k < d; ++k)
    out[basis.rank_of(rotl_bits(basis.state(k), basis.length()))] = in[k];
}

template <class Scalar>
void project_momentum(const SectorBasis& basis, int sign,
                      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1/-1");
  const int length = basis.length();
  Vec acc = v, cur = v, tmp;
  double phase = 1.0;
  for (int j = 1; j < length; ++j) {
    translate_state(basis, cur, tmp);
    cur.swap(tmp);
    phase *= sign;
    acc += phase * cur;
  }
  v = acc / static_cast<double>(length);
}

template <class Scalar>
void project_parity(const SectorBasis& basis, int sign,
                    Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1/-1");
  const std::size_t d = basis.dim();
  if (static_cast<std::size_t>(v.size()) != d)
    throw std::invalid_argument("vector dimension does not match basis");
  for (std::size_t k = 0; k < d; ++k) {
    const int p = (std::popcount(basis.state(k)) % 2 == 0) ? 1 : -1;
    if (p != sign) v[k] = Scalar(0);
  }
}

template void translate_state<double>(const SectorBasis&,
                                      const Eigen::VectorXd&, Eigen::VectorXd&);
template void translate_state<std::complex<double>>(const SectorBasis&,
                                                    const Eigen::VectorXcd&,
                                                    Eigen::VectorXcd&);
template void project_momentum<double>(const SectorBasis&, int, Eigen::VectorXd&);
template void project_momentum<std::complex<double>>(const SectorBasis&, int,
                                                     Eigen::VectorXcd&);
template void project_parity<double>(const SectorBasis&, int, Eigen::VectorXd&);
template void project_parity<std::complex<double>>(const SectorBasis&, int,
                                                   Eigen::VectorXcd&);

}  // namespace gfactor
