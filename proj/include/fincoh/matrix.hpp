#pragma once

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "fincoh/common.hpp"

namespace fincoh {

// Dense row-major integer matrix.  All exact; overflow aborts loudly.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<i64> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

  i64& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
  i64 operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat diag(const std::vector<i64>& d) {
    Mat m((int)d.size(), (int)d.size());
    for (int i = 0; i < (int)d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<i64>>& rs) {
    Mat m((int)rs.size(), rs.empty() ? 0 : (int)rs[0].size());
    for (int i = 0; i < m.rows; ++i) {
      require((int)rs[i].size() == m.cols, "ragged matrix rows");
      for (int j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }

  Mat transposed() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<i64> col(int j) const {
    std::vector<i64> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_col(int j, const std::vector<i64>& v) {
    for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

namespace detail {
constexpr i64 kFitBound = (i64)1 << 62;
inline i64 checked(i128 v) {
  if (v >= kFitBound || v <= -kFitBound) fail("integer overflow in exact arithmetic");
  return (i64)v;
}
}  // namespace detail

inline i64 addmul(i64 x, i64 q, i64 y) {  // x + q*y, checked
  return detail::checked((i128)x + (i128)q * y);
}

inline Mat mul(const Mat& A, const Mat& B) {
  require(A.cols == B.rows, "matrix product shape mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      i64 v = A(i, k);
      if (v == 0) continue;
      for (int j = 0; j < B.cols; ++j)
        C(i, j) = addmul(C(i, j), v, B(k, j));
    }
  return C;
}

inline std::vector<i64> mul(const Mat& A, const std::vector<i64>& x) {
  require(A.cols == (int)x.size(), "matrix-vector shape mismatch");
  std::vector<i64> y(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    i128 s = 0;
    for (int j = 0; j < A.cols; ++j) s += (i128)A(i, j) * x[j];
    y[i] = detail::checked(s);
  }
  return y;
}

inline Mat hstack(const Mat& A, const Mat& B) {
  require(A.rows == B.rows, "hstack row mismatch");
  Mat C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (int j = 0; j < B.cols; ++j) C(i, A.cols + j) = B(i, j);
  }
  return C;
}

// U * input * V = D with U, V unimodular and diagonal entries d_1 | d_2 | ...
// Ui and Vi are the tracked inverses of U and V.
struct SmithForm {
  Mat U, Ui, V, Vi;
  std::vector<i64> d;  // min(rows, cols) entries, trailing zeros allowed
  int rank = 0;        // number of nonzero diagonal entries
};

namespace detail {

struct SnfWork {
  Mat A, U, Ui, V, Vi;

  void row_add(int i, int j, i64 q) {  // row_i += q * row_j
    if (q == 0) return;
    for (int k = 0; k < A.cols; ++k) A(i, k) = addmul(A(i, k), q, A(j, k));
    for (int k = 0; k < U.cols; ++k) U(i, k) = addmul(U(i, k), q, U(j, k));
    for (int k = 0; k < Ui.rows; ++k) Ui(k, j) = addmul(Ui(k, j), -q, Ui(k, i));
  }
  void col_add(int j, int i, i64 q) {  // col_j += q * col_i
    if (q == 0) return;
    for (int k = 0; k < A.rows; ++k) A(k, j) = addmul(A(k, j), q, A(k, i));
    for (int k = 0; k < V.rows; ++k) V(k, j) = addmul(V(k, j), q, V(k, i));
    for (int k = 0; k < Vi.cols; ++k) Vi(i, k) = addmul(Vi(i, k), -q, Vi(j, k));
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < A.cols; ++k) std::swap(A(i, k), A(j, k));
    for (int k = 0; k < U.cols; ++k) std::swap(U(i, k), U(j, k));
    for (int k = 0; k < Ui.rows; ++k) std::swap(Ui(k, i), Ui(k, j));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < A.rows; ++k) std::swap(A(k, i), A(k, j));
    for (int k = 0; k < V.rows; ++k) std::swap(V(k, i), V(k, j));
    for (int k = 0; k < Vi.cols; ++k) std::swap(Vi(i, k), Vi(j, k));
  }
  void row_negate(int i) {
    for (int k = 0; k < A.cols; ++k) A(i, k) = -A(i, k);
    for (int k = 0; k < U.cols; ++k) U(i, k) = -U(i, k);
    for (int k = 0; k < Ui.rows; ++k) Ui(k, i) = -Ui(k, i);
  }

  // Clear row t and column t outside the pivot, leaving the pivot dividing
  // every entry of the remaining submatrix.
  void eliminate(int t) {
    const int r = A.rows, c = A.cols;
    for (;;) {
      int pi = -1, pj = -1;
      i64 best = 0;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j) {
          i64 v = std::llabs(A(i, j));
          if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
        }
      if (pi < 0) return;  // submatrix is zero
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (int i = t + 1; i < r; ++i)
        if (A(i, t) != 0) {
          row_add(i, t, -floordiv(A(i, t), A(t, t)));
          if (A(i, t) != 0) clean = false;
        }
      for (int j = t + 1; j < c; ++j)
        if (A(t, j) != 0) {
          col_add(j, t, -floordiv(A(t, j), A(t, t)));
          if (A(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      // pivot must divide the rest of the submatrix
      i64 p = A(t, t);
      int bi = -1;
      for (int i = t + 1; i < r && bi < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (A(i, j) % p != 0) { bi = i; break; }
      if (bi < 0) return;
      row_add(t, bi, 1);
    }
  }
};

}  // namespace detail

inline SmithForm snf(const Mat& m) {
  detail::SnfWork w{m, Mat::identity(m.rows), Mat::identity(m.rows),
                    Mat::identity(m.cols), Mat::identity(m.cols)};
  const int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    w.eliminate(t);
    if (w.A(t, t) == 0) break;
  }
  for (int t = 0; t < n; ++t)
    if (w.A(t, t) < 0) w.row_negate(t);
  // enforce the divisibility chain
  for (int t = 0; t + 1 < n;) {
    i64 a = w.A(t, t), b = w.A(t + 1, t + 1);
    if (a != 0 && b % a != 0) {
      w.col_add(t, t + 1, 1);
      w.eliminate(t);
      if (w.A(t, t) < 0) w.row_negate(t);
      if (w.A(t + 1, t + 1) < 0) w.row_negate(t + 1);
      if (t > 0) --t;  // the fix can disturb the previous pair
    } else {
      ++t;
    }
  }
  SmithForm s;
  s.d.resize(n);
  for (int t = 0; t < n; ++t) s.d[t] = w.A(t, t);
  s.rank = 0;
  while (s.rank < n && s.d[s.rank] != 0) ++s.rank;
  s.U = std::move(w.U);
  s.Ui = std::move(w.Ui);
  s.V = std::move(w.V);
  s.Vi = std::move(w.Vi);
  return s;
}

// Basis of the column span of `gens`, as a lower-triangular r x r matrix.
// The span must have full rank r (our lattices always contain N*I).
inline Mat hnf_basis(Mat gens) {
  const int r = gens.rows;
  int piv = 0;
  for (int i = 0; i < r; ++i) {
    // gcd-combine columns piv.. to leave a single nonzero entry in row i
    for (;;) {
      int jmin = -1;
      i64 best = 0;
      for (int j = piv; j < gens.cols; ++j) {
        i64 v = std::llabs(gens(i, j));
        if (v != 0 && (best == 0 || v < best)) { best = v; jmin = j; }
      }
      require(jmin >= 0, "hnf_basis: generators do not span full rank");
      for (int k = 0; k < r; ++k) std::swap(gens(k, piv), gens(k, jmin));
      bool clean = true;
      for (int j = piv + 1; j < gens.cols; ++j)
        if (gens(i, j) != 0) {
          i64 q = -floordiv(gens(i, j), gens(i, piv));
          for (int k = 0; k < r; ++k)
            gens(k, j) = addmul(gens(k, j), q, gens(k, piv));
          if (gens(i, j) != 0) clean = false;
        }
      if (clean) break;
    }
    if (gens(i, piv) < 0)
      for (int k = 0; k < r; ++k) gens(k, piv) = -gens(k, piv);
    // reduce earlier pivot columns against this one
    for (int j = 0; j < piv; ++j) {
      i64 q = -floordiv(gens(i, j), gens(i, piv));
      for (int k = 0; k < r; ++k)
        gens(k, j) = addmul(gens(k, j), q, gens(k, piv));
    }
    ++piv;
  }
  Mat B(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) B(i, j) = gens(i, j);
  return B;
}

// Solve B x = v exactly for lower-triangular B with positive diagonal.
// Fails if v is outside the lattice spanned by B's columns.
inline std::vector<i64> solve_lower_triangular(const Mat& B, std::vector<i64> v) {
  const int n = B.rows;
  std::vector<i64> x(n, 0);
  for (int i = 0; i < n; ++i) {
    i128 s = v[i];
    for (int j = 0; j < i; ++j) s -= (i128)B(i, j) * x[j];
    i64 si = detail::checked(s);
    require(si % B(i, i) == 0, "solve_lower_triangular: not in lattice");
    x[i] = si / B(i, i);
  }
  return x;
}

}  // namespace fincoh
