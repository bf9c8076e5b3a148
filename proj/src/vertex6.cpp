#include "gfactor/vertex6.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace gfactor::vertex6 {

namespace {

// Vertex type by (west, east, south, north) arrow bits, 1 = right/up.
// a: (1111),(0000)  b: (1100),(0011)  c: (1001),(0110)  else forbidden.
// Returns 0 for a/b, 1 for c, -1 for forbidden.
inline int vertex_kind(int w, int e, int s, int n) {
  const int code = (w << 3) | (e << 2) | (s << 1) | n;
  switch (code) {
    case 0b1111:
    case 0b0000:
    case 0b1100:
    case 0b0011:
      return 0;
    case 0b1001:
    case 0b0110:
      return 1;
    default:
      return -1;
  }
}

using Poly = std::vector<std::int64_t>;

Poly poly_mul(const Poly& a, const Poly& b, int max_deg) {
  Poly out(max_deg + 1, 0);
  for (int i = 0; i <= max_deg && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j + i <= max_deg && j < static_cast<int>(b.size()); ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b, int max_deg) {
  const int n = static_cast<int>(a.size());
  PolyMatrix out(n, std::vector<Poly>(n, Poly(max_deg + 1, 0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Poly& aik = a[i][k];
      bool zero = true;
      for (std::int64_t v : aik)
        if (v != 0) {
          zero = false;
          break;
        }
      if (zero) continue;
      for (int j = 0; j < n; ++j) {
        Poly prod = poly_mul(aik, b[k][j], max_deg);
        for (int d = 0; d <= max_deg; ++d) out[i][j][d] += prod[d];
      }
    }
  return out;
}

/// Histogram over horizontal configurations of one row, given the vertical
/// arrows below and above: hist[k] = number of allowed rows with k c-vertices.
Poly row_histogram(int l1, unsigned below, unsigned above) {
  Poly hist(l1 + 1, 0);
  const unsigned top = 1u << l1;
  for (unsigned h = 0; h < top; ++h) {
    int nc = 0;
    bool ok = true;
    for (int col = 0; col < l1; ++col) {
      const int w = (h >> col) & 1;
      const int e = (h >> ((col + 1) % l1)) & 1;
      const int s = (below >> col) & 1;
      const int n = (above >> col) & 1;
      const int kind = vertex_kind(w, e, s, n);
      if (kind < 0) {
        ok = false;
        break;
      }
      nc += kind;
    }
    if (ok) ++hist[nc];
  }
  return hist;
}

}  // namespace

VertexLattice::VertexLattice(int l1_, int l2_, double c_) : l1(l1_), l2(l2_), c(c_) {
  if (l1 < 2 || l1 > 6 || l2 < 2 || l2 > 6)
    throw std::invalid_argument("torus dimensions must be in [2, 6]");
  if (!(c > 0.0)) throw std::domain_error("vertex weight must be positive");
}

double z2d(const VertexLattice& lattice, double weight) {
  if (!(weight >= 0.0)) throw std::domain_error("weight must be >= 0");
  const int l1 = lattice.l1;
  const int dim = 1 << l1;
  Eigen::MatrixXd t(dim, dim);
  for (int below = 0; below < dim; ++below)
    for (int above = 0; above < dim; ++above) {
      // trace over the horizontal bond along the row
      Eigen::Matrix2d prod = Eigen::Matrix2d::Identity();
      for (int col = 0; col < l1; ++col) {
        const int s = (below >> col) & 1;
        const int n = (above >> col) & 1;
        Eigen::Matrix2d m;
        for (int w = 0; w < 2; ++w)
          for (int e = 0; e < 2; ++e) {
            const int kind = vertex_kind(w, e, s, n);
            m(w, e) = (kind < 0) ? 0.0 : (kind == 1 ? weight : 1.0);
          }
        prod = prod * m;
      }
      t(above, below) = prod.trace();
    }
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(dim, dim);
  for (int r = 0; r < lattice.l2; ++r) p = p * t;
  return p.trace();
}

std::vector<std::int64_t> z2d_coefficients(const VertexLattice& lattice) {
  const int l1 = lattice.l1;
  const int dim = 1 << l1;
  const int max_deg = lattice.vertices();
  PolyMatrix t(dim, std::vector<Poly>(dim));
  for (int below = 0; below < dim; ++below)
    for (int above = 0; above < dim; ++above) {
      Poly h = row_histogram(l1, below, above);
      h.resize(max_deg + 1, 0);
      t[above][below] = std::move(h);
    }
  PolyMatrix p = t;
  for (int r = 1; r < lattice.l2; ++r) p = poly_matmul(p, t, max_deg);
  Poly z(max_deg + 1, 0);
  for (int i = 0; i < dim; ++i)
    for (int d = 0; d <= max_deg; ++d) z[d] += p[i][i][d];
  return z;
}

std::vector<std::int64_t> enumeration_histogram(const VertexLattice& lattice) {
  const int l1 = lattice.l1;
  const int l2 = lattice.l2;
  if (l1 * l2 > 16)
    throw std::invalid_argument("enumeration limited to l1*l2 <= 16");
  const int max_deg = lattice.vertices();
  std::vector<std::int64_t> total(max_deg + 1, 0);
  const std::uint64_t configs = std::uint64_t{1} << (l1 * l2);
  const unsigned row_mask = (1u << l1) - 1;
  const unsigned h_top = 1u << l1;
  for (std::uint64_t v = 0; v < configs; ++v) {
    Poly acc(max_deg + 1, 0);
    acc[0] = 1;
    bool ok = true;
    for (int r = 0; r < l2 && ok; ++r) {
      const unsigned below = static_cast<unsigned>(v >> (r * l1)) & row_mask;
      const unsigned above =
          static_cast<unsigned>(v >> (((r + 1) % l2) * l1)) & row_mask;
      Poly row(l1 + 1, 0);
      bool any = false;
      for (unsigned h = 0; h < h_top; ++h) {
        int nc = 0;
        bool allowed = true;
        for (int col = 0; col < l1; ++col) {
          const int kind = vertex_kind((h >> col) & 1, (h >> ((col + 1) % l1)) & 1,
                                       (below >> col) & 1, (above >> col) & 1);
          if (kind < 0) {
            allowed = false;
            break;
          }
          nc += kind;
        }
        if (allowed) {
          ++row[nc];
          any = true;
        }
      }
      if (!any) {
        ok = false;
        break;
      }
      acc = poly_mul(acc, row, max_deg);
    }
    if (ok)
      for (int d = 0; d <= max_deg; ++d) total[d] += acc[d];
  }
  return total;
}

double evaluate_histogram(const std::vector<std::int64_t>& hist, double weight) {
  double z = 0.0;
  double w_pow = 1.0;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    z += static_cast<double>(hist[k]) * w_pow;
    w_pow *= weight;
  }
  return z;
}

double lattice_fidelity(const VertexLattice& lattice, double c, double c_prime) {
  if (!(c > 0.0) || !(c_prime > 0.0))
    throw std::domain_error("vertex weights must be positive");
  const double num = z2d(lattice, c * c_prime);
  const double den =
      std::sqrt(z2d(lattice, c * c) * z2d(lattice, c_prime * c_prime));
  return num / den;
}

}  // namespace gfactor::vertex6
