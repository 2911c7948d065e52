#pragma once

#include "ptrop/core.hpp"

namespace ptrop {

// Dense integer matrix, row major.
struct IMat {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IMat() = default;
  IMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}

  Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  static IMat identity(size_t n) {
    IMat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IMat from_rows(const std::vector<IVec>& rows_in) {
    if (rows_in.empty()) return IMat(0, 0);
    IMat m(rows_in.size(), rows_in[0].size());
    for (size_t i = 0; i < rows_in.size(); ++i) {
      PTROP_CHECK(rows_in[i].size() == m.cols, "ragged rows");
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = rows_in[i][j];
    }
    return m;
  }

  static IMat from_cols(const std::vector<IVec>& cols_in) {
    if (cols_in.empty()) return IMat(0, 0);
    IMat m(cols_in[0].size(), cols_in.size());
    for (size_t j = 0; j < cols_in.size(); ++j) {
      PTROP_CHECK(cols_in[j].size() == m.rows, "ragged cols");
      for (size_t i = 0; i < m.rows; ++i) m(i, j) = cols_in[j][i];
    }
    return m;
  }

  IVec row(size_t i) const {
    IVec r(cols);
    for (size_t j = 0; j < cols; ++j) r[j] = (*this)(i, j);
    return r;
  }

  IVec col(size_t j) const {
    IVec c(rows);
    for (size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<IVec> rows_vec() const {
    std::vector<IVec> r;
    r.reserve(rows);
    for (size_t i = 0; i < rows; ++i) r.push_back(row(i));
    return r;
  }

  IMat transpose() const {
    IMat t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline IMat mul(const IMat& A, const IMat& B) {
  PTROP_CHECK(A.cols == B.rows, "matrix size mismatch");
  IMat C(A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      const Int& aik = A(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

inline IVec mul(const IMat& A, const IVec& x) {
  PTROP_CHECK(A.cols == x.size(), "matrix/vector size mismatch");
  IVec y(A.rows, 0);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) y[i] += A(i, j) * x[j];
  return y;
}

// Covector-on-the-left product x^T A.
inline IVec mul_left(const IVec& x, const IMat& A) {
  PTROP_CHECK(A.rows == x.size(), "matrix/vector size mismatch");
  IVec y(A.cols, 0);
  for (size_t j = 0; j < A.cols; ++j)
    for (size_t i = 0; i < A.rows; ++i) y[j] += x[i] * A(i, j);
  return y;
}

inline size_t rank(IMat m) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t piv = r;
    while (piv < m.rows && m(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
    for (size_t i = r + 1; i < m.rows; ++i) {
      if (m(i, c) == 0) continue;
      Int g = gcd(m(r, c), m(i, c));
      Int f1 = m(r, c) / g, f2 = m(i, c) / g;
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = m(i, j) * f1 - m(r, j) * f2;
    }
    ++r;
  }
  return r;
}

inline size_t rank_of_rows(const std::vector<IVec>& rows) {
  if (rows.empty()) return 0;
  return rank(IMat::from_rows(rows));
}

// Bareiss fraction-free determinant.
inline Int det(IMat m) {
  PTROP_CHECK(m.rows == m.cols, "det of non-square matrix");
  size_t n = m.rows;
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Hermite normal form of the rows; returns H (rank many nonzero rows first)
// and optionally the unimodular U with U*A = H.
inline IMat hnf_rows(IMat m, IMat* u_out = nullptr) {
  size_t n = m.rows;
  IMat u = IMat::identity(n);
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < n; ++c) {
    // eliminate below r in column c using gcd steps
    size_t piv = n;
    for (size_t i = r; i < n; ++i)
      if (m(i, c) != 0) { piv = i; break; }
    if (piv == n) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
    for (size_t j = 0; j < n; ++j) std::swap(u(r, j), u(piv, j));
    for (size_t i = r + 1; i < n; ++i) {
      while (m(i, c) != 0) {
        Int q = m(r, c) / m(i, c);
        for (size_t j = 0; j < m.cols; ++j) m(r, j) -= q * m(i, j);
        for (size_t j = 0; j < n; ++j) u(r, j) -= q * u(i, j);
        for (size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(i, j));
        for (size_t j = 0; j < n; ++j) std::swap(u(r, j), u(i, j));
      }
    }
    if (m(r, c) < 0) {
      for (size_t j = 0; j < m.cols; ++j) m(r, j) = -m(r, j);
      for (size_t j = 0; j < n; ++j) u(r, j) = -u(r, j);
    }
    // reduce rows above
    for (size_t i = 0; i < r; ++i) {
      Int q;
      // floor division so residues land in [0, pivot)
      Int num = m(i, c), den = m(r, c);
      q = num / den;
      if (num % den != 0 && ((num < 0) != (den < 0))) q -= 1;
      if (q != 0) {
        for (size_t j = 0; j < m.cols; ++j) m(i, j) -= q * m(r, j);
        for (size_t j = 0; j < n; ++j) u(i, j) -= q * u(r, j);
      }
    }
    ++r;
  }
  if (u_out) *u_out = u;
  return m;
}

// Integer kernel of A x = 0, returned as a lattice basis (saturated).
inline std::vector<IVec> kernel_basis(const IMat& A) {
  IMat u;
  IMat h = hnf_rows(A.transpose(), &u);
  size_t rk = 0;
  for (size_t i = 0; i < h.rows; ++i)
    if (!is_zero(h.row(i))) ++rk;
  std::vector<IVec> ker;
  for (size_t i = rk; i < u.rows; ++i) ker.push_back(u.row(i));
  return ker;
}

// Vectors vanishing against every row (the orthogonal complement lattice).
inline std::vector<IVec> orthogonal_complement(const std::vector<IVec>& rows, size_t ambient) {
  if (rows.empty()) {
    std::vector<IVec> full;
    for (size_t i = 0; i < ambient; ++i) full.push_back(unit_vector(ambient, i));
    return full;
  }
  return kernel_basis(IMat::from_rows(rows));
}

// Basis of the saturation of the row span: (L^perp)^perp.
inline std::vector<IVec> saturated_row_basis(const std::vector<IVec>& rows, size_t ambient) {
  return orthogonal_complement(orthogonal_complement(rows, ambient), ambient);
}

// Exact inverse of a unimodular integer matrix.
inline IMat inverse_unimodular(const IMat& A) {
  PTROP_CHECK(A.rows == A.cols, "inverse of non-square matrix");
  Int d = det(A);
  PTROP_CHECK(d == 1 || d == -1, "matrix is not unimodular");
  size_t n = A.rows;
  // adjugate via cofactors (desk scale)
  IMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IMat minor(n - 1, n - 1);
      for (size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc) = A(r, c);
          ++mc;
        }
        ++mr;
      }
      Int cof = det(minor);
      if ((i + j) % 2) cof = -cof;
      inv(j, i) = cof / d;
    }
  return inv;
}

// Solves A x = b over the rationals; returns false when inconsistent.
inline bool solve_q(const IMat& A, const QVec& b, QVec& x_out) {
  size_t n = A.rows, m = A.cols;
  std::vector<QVec> aug(n, QVec(m + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) aug[i][j] = Rat(A(i, j));
    aug[i][m] = b[i];
  }
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < m && r < n; ++c) {
    size_t piv = r;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[r], aug[piv]);
    Rat p = aug[r][c];
    for (size_t j = c; j <= m; ++j) aug[r][j] /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (size_t j = c; j <= m; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < n; ++i)
    if (aug[i][m] != 0) return false;
  x_out.assign(m, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x_out[pivot_col[i]] = aug[i][m];
  return true;
}

inline bool solve_q(const IMat& A, const IVec& b, QVec& x_out) {
  return solve_q(A, to_q(b), x_out);
}

// Solves A x = b over the integers; returns false when no integral solution
// exists. Works through the HNF of the columns with transform tracking.
inline bool solve_integral(const IMat& A, const IVec& b, IVec& x_out) {
  IMat M = A.transpose();  // rows of M = columns of A
  IMat U;
  IMat H = hnf_rows(M, &U);
  IVec r = b;
  IVec q(M.rows, 0);
  size_t row = 0;
  for (size_t c = 0; c < H.cols; ++c) {
    if (row < H.rows && H(row, c) != 0) {
      if (r[c] % H(row, c) != 0) return false;
      Int f = r[c] / H(row, c);
      for (size_t j = 0; j < H.cols; ++j) r[j] -= f * H(row, j);
      q[row] = f;
      ++row;
    } else if (r[c] != 0) {
      return false;
    }
  }
  if (!is_zero(r)) return false;
  x_out = mul_left(q, U);
  return true;
}

// Membership of b in the lattice generated by the rows of A.
inline bool in_row_lattice(const IMat& A, const IVec& b) {
  IMat h = hnf_rows(A);
  IVec r = b;
  size_t row = 0;
  for (size_t c = 0; c < h.cols; ++c) {
    if (row < h.rows && h(row, c) != 0) {
      if (r[c] % h(row, c) != 0) return false;
      Int q = r[c] / h(row, c);
      for (size_t j = 0; j < h.cols; ++j) r[j] -= q * h(row, j);
      ++row;
    } else if (r[c] != 0) {
      return false;
    }
  }
  return is_zero(r);
}

// Projection onto the quotient lattice Z^n / L for a saturated sublattice L
// given by basis rows. Returns a (n-k) x n matrix P with kernel L and image
// the full quotient lattice.
inline IMat quotient_projection(const std::vector<IVec>& sublattice_rows, size_t n) {
  if (sublattice_rows.empty()) return IMat::identity(n);
  IMat u;
  IMat h = hnf_rows(IMat::from_rows(sublattice_rows).transpose(), &u);
  size_t rk = 0;
  for (size_t i = 0; i < h.rows; ++i)
    if (!is_zero(h.row(i))) ++rk;
  // u * (basis columns) = [D; 0]; for a saturated lattice the last n-rk rows
  // of u give a surjection with kernel exactly L
  IMat p(n - rk, n);
  for (size_t i = rk; i < n; ++i)
    for (size_t j = 0; j < n; ++j) p(i - rk, j) = u(i, j);
  return p;
}

// Completes a primitive vector to a basis; returns U in GL(n,Z) whose first
// row maps v to e_1 in the sense U * v = e_1. The quotient by Z v is then
// the last n-1 coordinates of U * x.
inline IMat complete_to_basis(const IVec& v) {
  size_t n = v.size();
  PTROP_CHECK(content(v) == 1, "vector must be primitive");
  IMat u;
  IMat m(n, 1);
  for (size_t i = 0; i < n; ++i) m(i, 0) = v[i];
  IMat h = hnf_rows(m, &u);
  PTROP_CHECK(h(0, 0) == 1, "completion failed");
  return u;  // u * v = e_1
}

}  // namespace ptrop
