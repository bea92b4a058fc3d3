#pragma once

#include <optional>

#include "fincoh/matrix.hpp"

namespace fincoh {

// Exact linear algebra for systems A x = b where row i of the system is a
// congruence mod m_i.  Everything is routed through diagonalization over
// Z/p^e (valuation pivoting is valid there), one prime at a time, with CRT
// recombination.  This stays in single words regardless of system size.

namespace detail {

inline int val_p(i64 x, i64 p, int e) {
  if (x == 0) return e;
  int v = 0;
  while (v < e && x % p == 0) { x /= p; ++v; }
  return v;
}

struct LocalDiag {
  i64 p = 0;
  int e = 0;
  i64 N = 0;
  int rows = 0, cols = 0, rank = 0;
  std::vector<i64> diag;  // p^{a_t}, increasing valuations
  Mat V;                  // cols x cols column-op accumulator, mod N
  Mat rhs;                // row ops applied to the attached block, mod N
};

// Bring A (mod N = p^e) to diagonal form U A V = diag(p^{a_1}, ...), applying
// the row operations to `rhs` instead of materializing U.
inline LocalDiag local_diagonalize(Mat A, i64 p, int e, Mat rhs) {
  LocalDiag L;
  L.p = p;
  L.e = e;
  L.N = 1;
  for (int i = 0; i < e; ++i) L.N *= p;
  L.rows = A.rows;
  L.cols = A.cols;
  L.V = Mat::identity(A.cols);
  const i64 N = L.N;
  for (auto& x : A.a) x = umod(x, N);
  for (auto& x : rhs.a) x = umod(x, N);

  auto row_sub = [&](Mat& M, int i, int t, i64 q) {
    if (q == 0) return;
    for (int k = 0; k < M.cols; ++k)
      M(i, k) = umod(M(i, k) - mul_mod(q, M(t, k), N), N);
  };
  auto row_swap = [&](Mat& M, int i, int t) {
    if (i == t) return;
    for (int k = 0; k < M.cols; ++k) std::swap(M(i, k), M(t, k));
  };
  auto row_scale = [&](Mat& M, int i, i64 u) {
    for (int k = 0; k < M.cols; ++k) M(i, k) = mul_mod(M(i, k), u, N);
  };

  const int n = std::min(A.rows, A.cols);
  int minval = 0;
  for (int t = 0; t < n; ++t) {
    // pivot of minimal p-valuation in the remaining submatrix
    int pi = -1, pj = -1, pv = e;
    for (int i = t; i < A.rows && pv > minval; ++i)
      for (int j = t; j < A.cols; ++j) {
        int v = val_p(A(i, j), p, e);
        if (v < pv) { pv = v; pi = i; pj = j; if (v <= minval) break; }
      }
    if (pi < 0) break;  // submatrix vanishes mod N
    minval = pv;
    row_swap(A, pi, t);
    row_swap(rhs, pi, t);
    if (pj != t) {
      for (int k = 0; k < A.rows; ++k) std::swap(A(k, pj), A(k, t));
      for (int k = 0; k < L.V.rows; ++k) std::swap(L.V(k, pj), L.V(k, t));
    }
    i64 pa = 1;
    for (int i = 0; i < pv; ++i) pa *= p;
    i64 unit = A(t, t) / pa;  // unit mod p^{e-pv}, invert mod N
    i64 uinv = inv_mod(unit, N);
    row_scale(A, t, uinv);
    row_scale(rhs, t, uinv);
    A(t, t) = pa;  // exact after unit normalization
    for (int i = t + 1; i < A.rows; ++i)
      if (A(i, t) != 0) {
        i64 q = A(i, t) / pa;
        row_sub(A, i, t, q);
        row_sub(rhs, i, t, q);
      }
    for (int j = t + 1; j < A.cols; ++j)
      if (A(t, j) != 0) {
        i64 q = A(t, j) / pa;
        for (int k = 0; k < A.rows; ++k)
          A(k, j) = umod(A(k, j) - mul_mod(q, A(k, t), N), N);
        for (int k = 0; k < L.V.rows; ++k)
          L.V(k, j) = umod(L.V(k, j) - mul_mod(q, L.V(k, t), N), N);
      }
    L.diag.push_back(pa);
  }
  L.rank = (int)L.diag.size();
  L.rhs = std::move(rhs);
  // keep transformed rows for the consistency check of non-pivot rows
  return L;
}

}  // namespace detail

// Solve A x = b_k (row i taken mod row_moduli[i]) for every column b_k of
// rhs.  A solution is a representative integer vector; callers reduce into
// their source module.  Row moduli must be >= 1; rows with modulus 1 carry
// no constraint.
inline std::vector<std::optional<std::vector<i64>>> solve_mod(
    const Mat& A, const std::vector<i64>& row_moduli,
    const std::vector<std::vector<i64>>& rhs) {
  require((int)row_moduli.size() == A.rows, "solve_mod: row moduli mismatch");
  const int m = (int)rhs.size();
  std::vector<std::optional<std::vector<i64>>> out(
      m, std::optional<std::vector<i64>>(std::vector<i64>(A.cols, 0)));
  i64 lcm = 1;
  for (i64 d : row_moduli) lcm = lcm_i64(lcm, d);
  if (A.rows == 0 || lcm == 1) return out;

  std::vector<std::vector<i64>> acc(m, std::vector<i64>(A.cols, 0));
  i64 acc_mod = 1;

  for (auto [p, e] : factorize(lcm)) {
    i64 N = 1;
    for (int i = 0; i < e; ++i) N *= p;
    // scale each congruence to be uniform mod p^e
    Mat Ap(A.rows, A.cols), B(A.rows, m);
    for (int i = 0; i < A.rows; ++i) {
      int v = detail::val_p(row_moduli[i], p, e);
      i64 scale = 1;
      for (int k = 0; k < e - v; ++k) scale *= p;
      for (int j = 0; j < A.cols; ++j)
        Ap(i, j) = mul_mod(umod(A(i, j), N), scale, N);
      for (int k = 0; k < m; ++k)
        B(i, k) = mul_mod(umod(rhs[k][i], N), scale, N);
    }
    auto L = detail::local_diagonalize(std::move(Ap), p, e, std::move(B));
    i64 minv = acc_mod == 1 ? 0 : inv_mod(acc_mod % N, N);
    for (int k = 0; k < m; ++k) {
      if (!out[k]) continue;
      std::vector<i64> z(A.cols, 0);
      bool ok = true;
      for (int t = 0; t < L.rank && ok; ++t) {
        i64 c = L.rhs(t, k);
        if (c % L.diag[t] != 0) ok = false;
        else z[t] = c / L.diag[t];
      }
      for (int t = L.rank; t < A.rows && ok; ++t)
        if (L.rhs(t, k) != 0) ok = false;
      if (!ok) { out[k].reset(); continue; }
      for (int i = 0; i < A.cols; ++i) {
        i128 s = 0;
        for (int j = 0; j < A.cols; ++j) s += (i128)L.V(i, j) * z[j];
        i64 xp = umod((i64)(s % N), N);
        // combine: result = acc (mod acc_mod), = xp (mod N)
        if (acc_mod == 1) acc[k][i] = xp;
        else acc[k][i] += acc_mod * mul_mod(umod(xp - acc[k][i], N), minv, N);
      }
    }
    acc_mod *= N;
  }
  for (int k = 0; k < m; ++k)
    if (out[k]) *out[k] = acc[k];
  return out;
}

// Basis (lower triangular, cols x cols) of the lattice
// {x in Z^cols : A x = 0 with row i mod row_moduli[i]}.
inline Mat kernel_lattice(const Mat& A, const std::vector<i64>& row_moduli) {
  require((int)row_moduli.size() == A.rows, "kernel_lattice: moduli mismatch");
  i64 lcm = 1;
  for (i64 d : row_moduli) lcm = lcm_i64(lcm, d);
  if (A.rows == 0 || A.cols == 0 || lcm == 1) return Mat::identity(A.cols);

  std::vector<std::vector<i64>> gens;
  for (auto [p, e] : factorize(lcm)) {
    i64 N = 1;
    for (int i = 0; i < e; ++i) N *= p;
    Mat Ap(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i) {
      int v = detail::val_p(row_moduli[i], p, e);
      i64 scale = 1;
      for (int k = 0; k < e - v; ++k) scale *= p;
      for (int j = 0; j < A.cols; ++j)
        Ap(i, j) = mul_mod(umod(A(i, j), N), scale, N);
    }
    auto L = detail::local_diagonalize(std::move(Ap), p, e, Mat(A.rows, 0));
    i64 cof = lcm / N;
    for (int t = 0; t < L.rank; ++t) {
      if (L.diag[t] == 1) continue;  // pivot is a unit: no kernel freedom here
      i64 s = (N / L.diag[t]) % N;
      std::vector<i64> g(A.cols);
      for (int i = 0; i < A.cols; ++i) g[i] = mul_mod(L.V(i, t), s, N) * cof;
      gens.push_back(std::move(g));
    }
    for (int j = L.rank; j < A.cols; ++j) {
      std::vector<i64> g(A.cols);
      for (int i = 0; i < A.cols; ++i) g[i] = L.V(i, j) * cof;
      gens.push_back(std::move(g));
    }
  }
  Mat G(A.cols, (int)gens.size() + A.cols);
  for (int j = 0; j < (int)gens.size(); ++j)
    for (int i = 0; i < A.cols; ++i) G(i, j) = gens[j][i];
  for (int i = 0; i < A.cols; ++i) G(i, (int)gens.size() + i) = lcm;
  return hnf_basis(std::move(G));
}

}  // namespace fincoh
