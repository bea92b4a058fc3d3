#pragma once

#include <numeric>
#include <optional>

#include "fincoh/modsolve.hpp"

namespace fincoh {

using Vec = std::vector<i64>;

// Finite abelian group presented as a direct sum of Z/d_i.  Canonical values
// (the outputs of the operations below) carry the invariant-factor chain
// d_1 | d_2 | ...; intermediate spaces such as cochain tables keep whatever
// coordinate order is convenient.
struct FinAbModule {
  std::vector<i64> moduli;  // each >= 2

  FinAbModule() = default;
  explicit FinAbModule(std::vector<i64> ds) : moduli(std::move(ds)) {
    for (i64 d : moduli) require(d >= 2, "module invariants must be >= 2");
  }

  int rank() const { return (int)moduli.size(); }
  bool is_zero() const { return moduli.empty(); }

  i64 exponent() const {
    i64 e = 1;
    for (i64 d : moduli) e = lcm_i64(e, d);
    return e;
  }

  i64 order() const {
    i128 n = 1;
    for (i64 d : moduli) {
      n *= d;
      require(n < ((i128)1 << 62), "module order overflows bookkeeping range");
    }
    return (i64)n;
  }

  Vec reduce(Vec v) const {
    require(v.size() == moduli.size(), "element rank mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] = umod(v[i], moduli[i]);
    return v;
  }

  Vec zero() const { return Vec(moduli.size(), 0); }

  Vec add(const Vec& a, const Vec& b) const {
    Vec c(moduli.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = umod(a[i] + b[i], moduli[i]);
    return c;
  }

  Vec sub(const Vec& a, const Vec& b) const {
    Vec c(moduli.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = umod(a[i] - b[i], moduli[i]);
    return c;
  }

  Vec scale(i64 n, const Vec& a) const {
    Vec c(moduli.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = umod(n % moduli[i] * a[i], moduli[i]);
    return c;
  }

  bool is_zero_elt(const Vec& a) const {
    for (size_t i = 0; i < a.size(); ++i)
      if (umod(a[i], moduli[i]) != 0) return false;
    return true;
  }

  bool eq(const Vec& a, const Vec& b) const { return is_zero_elt(sub(a, b)); }

  // invariant-factor sequence (settles isomorphism questions)
  std::vector<i64> invariant_factors() const {
    if (moduli.empty()) return {};
    auto s = snf(Mat::diag(moduli));
    std::vector<i64> out;
    for (i64 d : s.d)
      if (d >= 2) out.push_back(d);
    return out;
  }

  bool isomorphic_to(const FinAbModule& o) const {
    return invariant_factors() == o.invariant_factors();
  }

  // all elements, mixed-radix order; guarded by the enumeration bound
  std::vector<Vec> elements(i64 bound = 10000) const {
    require(order() <= bound, "module too large to enumerate");
    std::vector<Vec> out;
    Vec v = zero();
    out.push_back(v);
    for (;;) {
      size_t i = 0;
      while (i < v.size() && v[i] + 1 == moduli[i]) v[i++] = 0;
      if (i == v.size()) break;
      ++v[i];
      out.push_back(v);
    }
    if (moduli.empty()) out.resize(1);
    return out;
  }
};

inline FinAbModule direct_sum(const FinAbModule& a, const FinAbModule& b) {
  std::vector<i64> m = a.moduli;
  m.insert(m.end(), b.moduli.begin(), b.moduli.end());
  return FinAbModule(m);
}

// Additive map between finite modules, as a (target rank x source rank)
// integer matrix acting on coordinates.
struct ModuleHom {
  FinAbModule src, tgt;
  Mat mat;

  ModuleHom() = default;
  ModuleHom(FinAbModule s, FinAbModule t, Mat m)
      : src(std::move(s)), tgt(std::move(t)), mat(std::move(m)) {
    require(mat.rows == tgt.rank() && mat.cols == src.rank(),
            "hom matrix shape mismatch");
  }

  static ModuleHom zero(FinAbModule s, FinAbModule t) {
    Mat m(t.rank(), s.rank());
    return ModuleHom(std::move(s), std::move(t), std::move(m));
  }

  static ModuleHom identity(const FinAbModule& m) {
    return ModuleHom(m, m, Mat::identity(m.rank()));
  }

  bool well_defined() const {
    for (int i = 0; i < mat.rows; ++i)
      for (int j = 0; j < mat.cols; ++j)
        if (mul_mod(umod(mat(i, j), tgt.moduli[i]), src.moduli[j] % tgt.moduli[i],
                    tgt.moduli[i]) != 0)
          return false;
    return true;
  }

  Vec apply(const Vec& x) const { return tgt.reduce(mul(mat, x)); }

  bool eq(const ModuleHom& o) const {
    if (src.moduli != o.src.moduli || tgt.moduli != o.tgt.moduli) return false;
    for (int i = 0; i < mat.rows; ++i)
      for (int j = 0; j < mat.cols; ++j)
        if (umod(mat(i, j) - o.mat(i, j), tgt.moduli[i]) != 0) return false;
    return true;
  }

  bool is_zero_hom() const { return eq(zero(src, tgt)); }
};

inline ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
  require(f.tgt.moduli == g.src.moduli, "compose: middle module mismatch");
  Mat m = mul(g.mat, f.mat);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = umod(m(i, j), g.tgt.moduli[i]);
  return ModuleHom(f.src, g.tgt, std::move(m));
}

inline ModuleHom hom_add(const ModuleHom& a, const ModuleHom& b) {
  Mat m(a.mat.rows, a.mat.cols);
  for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = a.mat.a[i] + b.mat.a[i];
  return ModuleHom(a.src, a.tgt, std::move(m));
}

inline ModuleHom hom_sub(const ModuleHom& a, const ModuleHom& b) {
  Mat m(a.mat.rows, a.mat.cols);
  for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = a.mat.a[i] - b.mat.a[i];
  return ModuleHom(a.src, a.tgt, std::move(m));
}

inline ModuleHom hom_neg(const ModuleHom& a) {
  Mat m(a.mat.rows, a.mat.cols);
  for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = -a.mat.a[i];
  return ModuleHom(a.src, a.tgt, std::move(m));
}

// Quotient of Z^r by the column span of `relations` (must be finite), with
// coordinate maps in both directions.
struct Presentation {
  FinAbModule module;
  Mat proj;  // module coords = proj * x, reduced mod module.moduli
  Mat lift;  // representative x of a generator = columns of lift
};

inline Presentation present(const Mat& relations) {
  const int r = relations.rows;
  if (r == 0) return {FinAbModule{}, Mat(0, 0), Mat(0, 0)};
  auto s = snf(relations);
  require(s.rank == std::min(relations.rows, relations.cols) && s.rank == r,
          "present: quotient is not finite");
  std::vector<int> keep;
  std::vector<i64> inv;
  for (int i = 0; i < r; ++i)
    if (s.d[i] >= 2) { keep.push_back(i); inv.push_back(s.d[i]); }
  Presentation p;
  p.module = FinAbModule(inv);
  p.proj = Mat((int)keep.size(), r);
  p.lift = Mat(r, (int)keep.size());
  for (int k = 0; k < (int)keep.size(); ++k) {
    for (int j = 0; j < r; ++j) p.proj(k, j) = umod(s.U(keep[k], j), inv[k]);
    for (int j = 0; j < r; ++j) p.lift(j, k) = s.Ui(j, keep[k]);
  }
  return p;
}

// --- kernel / cokernel -----------------------------------------------------

struct KernelData {
  FinAbModule module;
  ModuleHom inclusion;  // module -> src of h
  Mat lattice;          // lower-triangular basis of {x : h(x) = 0} in Z^src
};

inline KernelData kernel(const ModuleHom& h) {
  KernelData k;
  k.lattice = kernel_lattice(h.mat, h.tgt.moduli);
  const int s = h.src.rank();
  Mat Q(s, s);
  for (int j = 0; j < s; ++j) {
    Vec col(s, 0);
    col[j] = h.src.moduli[j];
    Q.set_col(j, solve_lower_triangular(k.lattice, col));
  }
  auto p = present(Q);
  k.module = p.module;
  Mat inc = mul(k.lattice, p.lift);
  for (int i = 0; i < inc.rows; ++i)
    for (int j = 0; j < inc.cols; ++j) inc(i, j) = umod(inc(i, j), h.src.moduli[i]);
  k.inclusion = ModuleHom(k.module, h.src, std::move(inc));
  return k;
}

struct CokernelData {
  FinAbModule module;
  ModuleHom projection;  // tgt of h -> module
};

inline CokernelData cokernel(const ModuleHom& h) {
  auto p = present(hstack(h.mat, Mat::diag(h.tgt.moduli)));
  CokernelData c;
  c.module = p.module;
  c.projection = ModuleHom(h.tgt, p.module, p.proj);
  return c;
}

inline i64 image_order(const ModuleHom& h) {
  return h.src.order() / kernel(h).module.order();
}

// --- hom module -------------------------------------------------------------

// Hom(M, N) as a module together with the correspondence between its
// elements and actual homs.  Raw coordinates are indexed by generator pairs
// (i of M, j of N) with cyclic order gcd(d_i, e_j).
struct HomStructure {
  FinAbModule src, tgt;  // M, N
  FinAbModule module;    // Hom(M, N), canonical
  Mat proj, lift;        // between raw pair coordinates and module coords
  std::vector<i64> raw_ord;

  ModuleHom to_hom(const Vec& elt) const {
    Vec raw = mul(lift, elt);
    const int km = src.rank(), kn = tgt.rank();
    Mat m(kn, km);
    for (int i = 0; i < km; ++i)
      for (int j = 0; j < kn; ++j) {
        i64 g = raw_ord[(size_t)i * kn + j];
        m(j, i) = mul_mod(umod(raw[(size_t)i * kn + j], g), tgt.moduli[j] / g,
                          tgt.moduli[j]);
      }
    return ModuleHom(src, tgt, std::move(m));
  }

  Vec from_hom(const ModuleHom& h) const {
    const int km = src.rank(), kn = tgt.rank();
    Vec raw((size_t)km * kn);
    for (int i = 0; i < km; ++i)
      for (int j = 0; j < kn; ++j) {
        i64 g = raw_ord[(size_t)i * kn + j];
        i64 step = tgt.moduli[j] / g;
        i64 v = umod(h.mat(j, i), tgt.moduli[j]);
        require(v % step == 0, "from_hom: map is not well defined");
        raw[(size_t)i * kn + j] = v / step;
      }
    return module.reduce(mul(proj, raw));
  }
};

inline HomStructure hom_module(const FinAbModule& M, const FinAbModule& N) {
  HomStructure h;
  h.src = M;
  h.tgt = N;
  const int km = M.rank(), kn = N.rank();
  h.raw_ord.resize((size_t)km * kn);
  for (int i = 0; i < km; ++i)
    for (int j = 0; j < kn; ++j)
      h.raw_ord[(size_t)i * kn + j] = gcd_i64(M.moduli[i], N.moduli[j]);
  auto p = present(Mat::diag(h.raw_ord));
  h.module = p.module;
  h.proj = p.proj;
  h.lift = p.lift;
  return h;
}

// --- duals ------------------------------------------------------------------

// Dual coordinates mirror the primal ones: phi = (c_1, ..., c_k) stands for
// the character sending generator x_i to c_i / d_i in Q/Z.
inline FinAbModule dual_module(const FinAbModule& M) { return M; }

// evaluation in Z/exponent(M)
inline i64 dual_eval(const FinAbModule& M, const Vec& phi, const Vec& x) {
  i64 e = M.exponent();
  i64 s = 0;
  for (int i = 0; i < M.rank(); ++i)
    s = umod(s + mul_mod(umod(phi[i], M.moduli[i]), umod(x[i], M.moduli[i]) % e,
                         e) * (e / M.moduli[i]) % e,
             e);
  return s;
}

// rho* with rho*(phi) = phi . rho ; contravariant, exact on finite modules
inline ModuleHom transpose_hom(const ModuleHom& h) {
  const int km = h.src.rank(), kn = h.tgt.rank();
  Mat t(km, kn);
  for (int i = 0; i < km; ++i)
    for (int j = 0; j < kn; ++j) {
      i128 num = (i128)h.mat(j, i) * h.src.moduli[i];
      require(num % h.tgt.moduli[j] == 0, "transpose_hom: map not well defined");
      t(i, j) = umod((i64)(num / h.tgt.moduli[j]), h.src.moduli[i]);
    }
  return ModuleHom(dual_module(h.tgt), dual_module(h.src), std::move(t));
}

// --- tensor product ----------------------------------------------------------

struct TensorStructure {
  FinAbModule left, right, module;
  Mat proj, lift;  // raw index = i * right.rank() + j
  std::vector<i64> raw_ord;

  Vec pure(const Vec& x, const Vec& y) const {
    const int kn = right.rank();
    Vec raw(raw_ord.size());
    for (int i = 0; i < left.rank(); ++i)
      for (int j = 0; j < kn; ++j) {
        i64 g = raw_ord[(size_t)i * kn + j];
        raw[(size_t)i * kn + j] = mul_mod(umod(x[i], g), umod(y[j], g), g);
      }
    return module.reduce(mul(proj, raw));
  }
};

inline TensorStructure tensor_module(const FinAbModule& M, const FinAbModule& N) {
  TensorStructure t;
  t.left = M;
  t.right = N;
  const int km = M.rank(), kn = N.rank();
  t.raw_ord.resize((size_t)km * kn);
  for (int i = 0; i < km; ++i)
    for (int j = 0; j < kn; ++j)
      t.raw_ord[(size_t)i * kn + j] = gcd_i64(M.moduli[i], N.moduli[j]);
  auto p = present(Mat::diag(t.raw_ord));
  t.module = p.module;
  t.proj = p.proj;
  t.lift = p.lift;
  return t;
}

// the map M (x) N -> N (x) M induced by commutativity
inline ModuleHom tensor_swap(const TensorStructure& mn, const TensorStructure& nm) {
  require(mn.left.moduli == nm.right.moduli && mn.right.moduli == nm.left.moduli,
          "tensor_swap: factor mismatch");
  const int km = mn.left.rank(), kn = mn.right.rank();
  Mat m(nm.module.rank(), mn.module.rank());
  for (int k = 0; k < mn.module.rank(); ++k) {
    Vec raw = mn.lift.col(k);
    Vec swapped((size_t)km * kn);
    for (int i = 0; i < km; ++i)
      for (int j = 0; j < kn; ++j)
        swapped[(size_t)j * km + i] = raw[(size_t)i * kn + j];
    m.set_col(k, nm.module.reduce(mul(nm.proj, swapped)));
  }
  return ModuleHom(mn.module, nm.module, std::move(m));
}

// Solve h(x) = b in the target module; batch interface.
inline std::vector<std::optional<Vec>> solve_hom(const ModuleHom& h,
                                                 const std::vector<Vec>& rhs) {
  auto sols = solve_mod(h.mat, h.tgt.moduli, rhs);
  std::vector<std::optional<Vec>> out(sols.size());
  for (size_t i = 0; i < sols.size(); ++i)
    if (sols[i]) out[i] = h.src.reduce(*sols[i]);
  return out;
}

inline std::optional<Vec> solve_hom_one(const ModuleHom& h, const Vec& b) {
  return solve_hom(h, {b})[0];
}

}  // namespace fincoh
