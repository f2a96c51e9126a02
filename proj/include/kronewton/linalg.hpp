#pragma once

#include <optional>
#include <vector>

#include "kronewton/interval.hpp"
#include "kronewton/padic.hpp"
#include "kronewton/upoly.hpp"

namespace kn {

template <class K>
using MatK = std::vector<std::vector<K>>;

template <class K>
MatK<K> mat_identity(int n, const K& one, const K& zero) {
  MatK<K> m(n, std::vector<K>(n, zero));
  for (int i = 0; i < n; ++i) m[i][i] = one;
  return m;
}

template <class K>
std::vector<K> mat_vec(const MatK<K>& m, const std::vector<K>& v) {
  std::vector<K> r;
  r.reserve(m.size());
  for (const auto& row : m) {
    K acc{};
    for (size_t j = 0; j < row.size(); ++j) acc = acc + row[j] * v[j];
    r.push_back(acc);
  }
  return r;
}

template <class K>
MatK<K> mat_mul(const MatK<K>& a, const MatK<K>& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  MatK<K> r(n, std::vector<K>(m, K{}));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][l] * b[l][j];
  return r;
}

// Exact Gaussian elimination over a field (Rat or GaussRat).
template <class K>
std::optional<MatK<K>> mat_inverse(MatK<K> m) {
  int n = static_cast<int>(m.size());
  MatK<K> inv = mat_identity(n, K(Rat(1)), K(Rat(0)));
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!coeff_is_zero(m[r][col])) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    K f = K(Rat(1)) / m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * f;
      inv[col][j] = inv[col][j] * f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || coeff_is_zero(m[r][col])) continue;
      K g = m[r][col];
      for (int j = 0; j < n; ++j) {
        m[r][j] = m[r][j] - g * m[col][j];
        inv[r][j] = inv[r][j] - g * inv[col][j];
      }
    }
  }
  return inv;
}

template <class K>
K mat_det(MatK<K> m) {
  int n = static_cast<int>(m.size());
  K det = K(Rat(1));
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!coeff_is_zero(m[r][col])) { piv = r; break; }
    if (piv < 0) return K(Rat(0));
    if (piv != col) {
      std::swap(m[col], m[piv]);
      det = det * K(Rat(-1));
    }
    det = det * m[col][col];
    K f = K(Rat(1)) / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (coeff_is_zero(m[r][col])) continue;
      K g = m[r][col] * f;
      for (int j = col; j < n; ++j) m[r][j] = m[r][j] - g * m[col][j];
    }
  }
  return det;
}

template <class K>
std::optional<std::vector<K>> mat_solve(MatK<K> m, std::vector<K> b) {
  int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!coeff_is_zero(m[r][col])) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(b[col], b[piv]);
    K f = K(Rat(1)) / m[col][col];
    for (int j = col; j < n; ++j) m[col][j] = m[col][j] * f;
    b[col] = b[col] * f;
    for (int r = 0; r < n; ++r) {
      if (r == col || coeff_is_zero(m[r][col])) continue;
      K g = m[r][col];
      for (int j = col; j < n; ++j) m[r][j] = m[r][j] - g * m[col][j];
      b[r] = b[r] - g * b[col];
    }
  }
  return b;
}

// Incremental row echelon over a field, tracking how each reduced row was
// formed from the inputs. add() returns the dependence coefficients
// (c_0, ..., c_{k-1}, 1 implied for the new vector is NOT included): if the
// new vector v_k satisfies v_k = sum c_i v_i it returns c, otherwise nullopt
// and the vector joins the basis.
template <class K>
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim) : dim_(dim) {}

  int size() const { return static_cast<int>(rows_.size()); }

  std::optional<std::vector<K>> add(std::vector<K> v) {
    std::vector<K> combo(count_, K(Rat(0)));  // v reduced = v - sum combo_i inp_i
    for (size_t r = 0; r < rows_.size(); ++r) {
      int pc = pivot_col_[r];
      if (coeff_is_zero(v[pc])) continue;
      K f = v[pc];  // rows_ are pivot-normalized
      for (int j = 0; j < dim_; ++j) v[j] = v[j] - f * rows_[r][j];
      for (int i = 0; i < count_; ++i)
        combo[i] = combo[i] + f * history_[r][i];
    }
    int pc = -1;
    for (int j = 0; j < dim_; ++j)
      if (!coeff_is_zero(v[j])) { pc = j; break; }
    if (pc < 0) {
      ++count_;
      for (auto& h : history_) h.push_back(K(Rat(0)));
      return combo;
    }
    K f = K(Rat(1)) / v[pc];
    for (int j = 0; j < dim_; ++j) v[j] = v[j] * f;
    // Stored row = f * (v_new - sum combo_i inp_i).
    std::vector<K> hist(count_, K(Rat(0)));
    for (int i = 0; i < count_; ++i) hist[i] = K(Rat(0)) - combo[i] * f;
    hist.push_back(f);
    ++count_;
    for (auto& h : history_) h.push_back(K(Rat(0)));
    rows_.push_back(std::move(v));
    pivot_col_.push_back(pc);
    history_.push_back(std::move(hist));
    return std::nullopt;
  }

 private:
  int dim_;
  int count_ = 0;  // inputs seen
  std::vector<std::vector<K>> rows_;
  std::vector<int> pivot_col_;
  std::vector<std::vector<K>> history_;  // row = combo of inputs
};

// Characteristic polynomial det(T I - A) over a field, by interpolation at
// T = 0..n (exact). Little-endian, monic.
template <class K>
std::vector<K> charpoly(const MatK<K>& a) {
  int n = static_cast<int>(a.size());
  std::vector<K> xs, ys;
  for (int t = 0; t <= n; ++t) {
    MatK<K> m = a;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        K v = K(Rat(0)) - a[i][j];
        if (i == j) v = v + K(Rat(t));
        m[i][j] = v;
      }
    xs.push_back(K(Rat(t)));
    ys.push_back(mat_det(m));
  }
  // Lagrange interpolation via Newton's divided differences.
  int npts = n + 1;
  std::vector<K> dd = ys;
  for (int lev = 1; lev < npts; ++lev)
    for (int i = npts - 1; i >= lev; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lev]);
  std::vector<K> poly{dd[npts - 1]};
  for (int i = npts - 2; i >= 0; --i) {
    poly.insert(poly.begin(), K(Rat(0)));
    for (size_t j = 0; j + 1 < poly.size(); ++j)
      poly[j] = poly[j] - xs[i] * poly[j + 1];
    poly[0] = poly[0] + dd[i];
  }
  return poly;
}

// ---------------------------------------------------------------------------
// Interval matrices.

using MatC = std::vector<std::vector<CInt>>;

MatC mat_inverse_cint(const MatC& m, mpfr_prec_t prec);
RInt frobenius_sq(const MatC& m, mpfr_prec_t prec);
std::vector<CInt> mat_vec_cint(const MatC& m, const std::vector<CInt>& v,
                               mpfr_prec_t prec);

// Lower bound for the operator norm via evaluation probes.
RInt op_norm_lb(const MatC& m, mpfr_prec_t prec, int probes, uint64_t seed);

// ---------------------------------------------------------------------------
// p-adic matrices.

using MatP = std::vector<std::vector<Padic>>;

MatP mat_inverse_padic(const MatP& m, const Int& p, long aprec);

}  // namespace kn
