#pragma once

#include "fincoh/complex.hpp"

namespace fincoh {

// C(G, M) up to a top degree, with the differential matrices materialized.
// Cochain tables and complex coordinates share the same flat layout.
struct PlainComplex {
  GModulePtr M;
  ComplexPtr cx;
  Limits lim;

  Vec encode(const Cochain& f) const {
    Cochain g = f;
    g.reduce();
    return g.flat;
  }

  Cochain decode(int deg, const Vec& v) const {
    Cochain f(M, deg, lim);
    f.flat = v;
    f.reduce();
    return f;
  }
};

// differential matrix C^i(G,M) -> C^{i+1}(G,M)
inline Mat differential_matrix(const GModule& M, int i, const Limits& lim) {
  const auto& G = *M.G;
  const int k = M.rank(), n = G.n;
  i64 rows = table_entries(n, i + 1, k, lim);
  i64 cols = table_entries(n, i, std::max(k, 1), lim) / std::max(k, 1) * k;
  require(rows * std::max(cols, (i64)1) <= (i64)1 << 28,
          "differential matrix exceeds bound");
  Mat d((int)rows, (int)cols);
  std::vector<int> t(i + 1, 0), sub(i);
  i64 ot = 0;
  auto add_block = [&](i64 row_t, i64 col_t, const Mat& blk, i64 sign) {
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        d((int)(row_t * k + r), (int)(col_t * k + c)) += sign * blk(r, c);
  };
  Mat id = Mat::identity(k);
  do {
    for (int c = 0; c < i; ++c) sub[c] = t[c + 1];
    i64 ct = 0;
    for (int c = 0; c < i; ++c) ct = ct * n + sub[c];
    add_block(ot, ct, M.act[t[0]], 1);
    for (int j = 1; j <= i; ++j) {
      for (int c = 0; c < i; ++c)
        sub[c] = c < j - 1 ? t[c] : (c == j - 1 ? G.mul(t[j - 1], t[j]) : t[c + 1]);
      ct = 0;
      for (int c = 0; c < i; ++c) ct = ct * n + sub[c];
      add_block(ot, ct, id, (j % 2) ? -1 : 1);
    }
    ct = 0;
    for (int c = 0; c < i; ++c) ct = ct * n + t[c];
    add_block(ot, ct, id, ((i + 1) % 2) ? -1 : 1);
    ++ot;
  } while (next_tuple(t, n));
  return d;
}

inline PlainComplex plain_complex(GModulePtr M, int top, const Limits& lim = Limits{}) {
  require(M->G->n <= lim.max_group_order, "group order exceeds bound");
  Complex c;
  c.lo = 0;
  c.label = "C(" + M->G->name + "," + M->name + ")";
  const int k = M->rank(), n = M->G->n;
  for (int i = 0; i <= top; ++i) {
    i64 cells = table_entries(n, i, std::max(k, 1), lim) / std::max(k, 1);
    std::vector<i64> mods;
    mods.reserve(cells * k);
    for (i64 t = 0; t < cells; ++t)
      mods.insert(mods.end(), M->M.moduli.begin(), M->M.moduli.end());
    c.sp.push_back(mods.empty() ? FinAbModule{} : FinAbModule(std::move(mods)));
  }
  for (int i = 0; i < top; ++i) c.d.push_back(differential_matrix(*M, i, lim));
  PlainComplex out;
  out.M = std::move(M);
  out.cx = make_complex(std::move(c));
  out.lim = lim;
  return out;
}

// Cohomology of G with coefficients in M: the module, representative
// cocycles, and a zero-class membership test.
struct GroupCohomology {
  GModulePtr M;
  int degree = 0;
  FinAbModule H;
  std::vector<Cochain> reps;
  std::shared_ptr<ComplexOps> ops;  // keeps the solver alive
  PlainComplex pc;

  Cochain rep_combination(const Vec& cls) const {
    Cochain f(M, degree, pc.lim);
    for (int j = 0; j < H.rank(); ++j)
      f = f + scaled(umod(cls[j], H.moduli[j]), reps[j]);
    return f;
  }

  bool is_zero_class(const Cochain& f) const {
    return ops->is_coboundary(degree, pc.encode(f));
  }

  std::optional<Vec> class_of(const Cochain& f) const {
    return ops->class_of(degree, pc.encode(f));
  }

  bool same_class(const Cochain& f, const Cochain& g) const {
    return is_zero_class(f - g);
  }
};

inline GroupCohomology cohomology(GModulePtr M, int i, const Limits& lim = Limits{}) {
  require(i >= 0, "cohomology degree must be >= 0");
  require(i <= lim.degree_cap, "cohomology degree beyond configured cap");
  GroupCohomology gc;
  gc.pc = plain_complex(M, i + 1, lim);
  gc.M = gc.pc.M;
  gc.degree = i;
  gc.ops = std::make_shared<ComplexOps>(gc.pc.cx);
  const auto& data = gc.ops->coh(i);
  gc.H = data.H;
  for (const auto& r : data.reps) gc.reps.push_back(gc.pc.decode(i, r));
  return gc;
}

// G-hom of coefficients applied cellwise, as a chain map of plain complexes
inline ChainMap coefficient_chain_map(const PlainComplex& src, const PlainComplex& tgt,
                                      const ModuleHom& h) {
  require(src.M->G.get() == tgt.M->G.get(), "coefficient map across groups");
  std::vector<Mat> comp;
  const int ks = src.M->rank(), kt = tgt.M->rank();
  const int n = src.M->G->n;
  for (int i = src.cx->lo; i <= std::min(src.cx->hi(), tgt.cx->hi()); ++i) {
    i64 cells = 1;
    for (int k = 0; k < i; ++k) cells *= n;
    Mat m((int)(cells * kt), (int)(cells * ks));
    for (i64 t = 0; t < cells; ++t)
      for (int r = 0; r < kt; ++r)
        for (int c = 0; c < ks; ++c) m((int)(t * kt + r), (int)(t * ks + c)) = h.mat(r, c);
    comp.push_back(std::move(m));
  }
  return chain_map(src.cx, tgt.cx, src.cx->lo, std::move(comp));
}

// random cocycle: random combination of representatives plus a random
// coboundary (covers the full cocycle space)
inline Cochain random_cocycle(Rng& rng, const GroupCohomology& gc) {
  Vec cls(gc.H.rank());
  for (int j = 0; j < gc.H.rank(); ++j) cls[j] = rng.below(gc.H.moduli[j]);
  Cochain f = gc.rep_combination(cls);
  if (gc.degree >= 1) {
    Cochain b = random_cochain(rng, gc.M, gc.degree - 1, gc.pc.lim);
    f = f + differential(b, gc.pc.lim);
  }
  return f;
}

}  // namespace fincoh
