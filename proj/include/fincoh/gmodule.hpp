#pragma once

#include "fincoh/group.hpp"

namespace fincoh {

// A finite module with a verified action of a finite group, one integer
// matrix per group element.
struct GModule {
  GroupPtr G;
  FinAbModule M;
  std::vector<Mat> act;  // act[g], rank x rank
  std::string name;

  GModule() : G(trivial_group()) {}

  GModule(GroupPtr g, FinAbModule m, std::vector<Mat> a, std::string nm = "M")
      : G(std::move(g)), M(std::move(m)), act(std::move(a)), name(std::move(nm)) {
    require((int)act.size() == G->n, "one action matrix per group element");
    for (auto& mt : act)
      require(mt.rows == M.rank() && mt.cols == M.rank(), "action matrix shape");
    verify_action();
  }

  static GModule trivial(GroupPtr g, FinAbModule m, std::string nm = "M") {
    std::vector<Mat> a(g->n, Mat::identity(m.rank()));
    return GModule(std::move(g), std::move(m), std::move(a), std::move(nm));
  }

  int rank() const { return M.rank(); }

  ModuleHom action_hom(int g) const { return ModuleHom(M, M, act[g]); }

  Vec apply(int g, const Vec& x) const { return M.reduce(mul(act[g], x)); }

  bool trivial_action() const {
    for (int g = 0; g < G->n; ++g)
      if (!action_hom(g).eq(ModuleHom::identity(M))) return false;
    return true;
  }

  void verify_action() const {
    require(action_hom(G->id).eq(ModuleHom::identity(M)), "action at identity");
    for (int g = 0; g < G->n; ++g) {
      require(action_hom(g).well_defined(), "action matrix not well defined");
      for (int h = 0; h < G->n; ++h)
        if (!compose(action_hom(g), action_hom(h)).eq(action_hom(G->mul(g, h))))
          fail("action not multiplicative at (" + std::to_string(g) + "," +
               std::to_string(h) + ")");
      // invertibility comes with act[g] act[g^{-1}] = act[e]
    }
  }

  // module with the action multiplied by a character (rank-1 twisting)
  GModule twisted(const std::vector<i64>& character, const std::string& suffix = "(1)") const {
    require((int)character.size() == G->n, "character table size");
    std::vector<Mat> a = act;
    for (int g = 0; g < G->n; ++g)
      for (auto& v : a[g].a) v = v * character[g];
    return GModule(G, M, std::move(a), name + suffix);
  }

  // same module viewed through a homomorphism j : H -> G
  GModule restricted(const GroupHom& j) const {
    require(j.tgt.get() == G.get(), "restriction along a map into another group");
    std::vector<Mat> a(j.src->n);
    for (int h = 0; h < j.src->n; ++h) a[h] = act[j(h)];
    return GModule(j.src, M, std::move(a), name + "|" + j.src->name);
  }

  // Pontryagin dual with (g phi)(x) = phi(g^{-1} x)
  GModule dualized() const {
    std::vector<Mat> a(G->n);
    for (int g = 0; g < G->n; ++g)
      a[g] = transpose_hom(action_hom(G->inverse(g))).mat;
    return GModule(G, dual_module(M), std::move(a), name + "^");
  }
};

using GModulePtr = std::shared_ptr<const GModule>;

inline GModulePtr gmod(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

// rank-one module Z/q with the group acting through a character
inline GModule character_module(GroupPtr g, i64 q, const std::vector<i64>& chi,
                                const std::string& nm = "R") {
  require((int)chi.size() == g->n, "character table size");
  std::vector<Mat> a(g->n, Mat(1, 1));
  for (int i = 0; i < g->n; ++i) a[i](0, 0) = umod(chi[i], q);
  return GModule(std::move(g), FinAbModule({q}), std::move(a), nm);
}

inline GModule direct_sum(const GModule& a, const GModule& b) {
  require(a.G.get() == b.G.get(), "direct sum over one group");
  std::vector<Mat> acts(a.G->n);
  for (int g = 0; g < a.G->n; ++g) {
    Mat m(a.rank() + b.rank(), a.rank() + b.rank());
    for (int i = 0; i < a.rank(); ++i)
      for (int j = 0; j < a.rank(); ++j) m(i, j) = a.act[g](i, j);
    for (int i = 0; i < b.rank(); ++i)
      for (int j = 0; j < b.rank(); ++j) m(a.rank() + i, a.rank() + j) = b.act[g](i, j);
    acts[g] = std::move(m);
  }
  return GModule(a.G, direct_sum(a.M, b.M), std::move(acts),
                 a.name + "+" + b.name);
}

// Hom(C, A) with the conjugation action (g phi) = g . phi . g^{-1}
struct HomGModule {
  HomStructure hs;
  GModule gm;

  ModuleHom to_hom(const Vec& v) const { return hs.to_hom(v); }
  Vec from_hom(const ModuleHom& h) const { return hs.from_hom(h); }
};

inline HomGModule hom_gmodule(const GModule& C, const GModule& A) {
  require(C.G.get() == A.G.get(), "hom over one group");
  HomGModule out;
  out.hs = hom_module(C.M, A.M);
  const int r = out.hs.module.rank();
  std::vector<Mat> acts(C.G->n);
  for (int g = 0; g < C.G->n; ++g) {
    Mat m(r, r);
    for (int k = 0; k < r; ++k) {
      Vec ek(r, 0);
      ek[k] = 1;
      ModuleHom phi = out.hs.to_hom(ek);
      ModuleHom conj = compose(A.action_hom(g),
                               compose(phi, C.action_hom(C.G->inverse(g))));
      m.set_col(k, out.hs.from_hom(conj));
    }
    acts[g] = std::move(m);
  }
  out.gm = GModule(C.G, out.hs.module, std::move(acts),
                   "Hom(" + C.name + "," + A.name + ")");
  return out;
}

// M (x) N with the diagonal action
struct TensorGModule {
  TensorStructure ts;
  GModule gm;

  Vec pure(const Vec& x, const Vec& y) const { return ts.pure(x, y); }
};

inline Mat kronecker(const Mat& a, const Mat& b) {
  Mat k(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      for (int p = 0; p < b.rows; ++p)
        for (int q = 0; q < b.cols; ++q)
          k(i * b.rows + p, j * b.cols + q) = detail::checked((i128)a(i, j) * b(p, q));
  return k;
}

inline TensorGModule tensor_gmodule(const GModule& M, const GModule& N) {
  require(M.G.get() == N.G.get(), "tensor over one group");
  TensorGModule out;
  out.ts = tensor_module(M.M, N.M);
  const int r = out.ts.module.rank();
  std::vector<Mat> acts(M.G->n);
  for (int g = 0; g < M.G->n; ++g) {
    Mat raw = kronecker(M.act[g], N.act[g]);
    Mat m = mul(out.ts.proj, mul(raw, out.ts.lift));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m(i, j) = umod(m(i, j), out.ts.module.moduli[i]);
    acts[g] = std::move(m);
  }
  out.gm = GModule(M.G, out.ts.module, std::move(acts), M.name + "(x)" + N.name);
  return out;
}

// Biadditive G-equivariant pairing between coefficient modules; the input to
// every cup product.  Equivariance is checked on generators at construction.
struct Pairing {
  GModulePtr left, right, out;
  std::vector<Vec> table;  // table[i * right.rank + j] in out

  Pairing() = default;
  Pairing(GModulePtr l, GModulePtr r, GModulePtr o, std::vector<Vec> t)
      : left(std::move(l)), right(std::move(r)), out(std::move(o)), table(std::move(t)) {
    require((int)table.size() == left->rank() * right->rank(), "pairing table size");
    require(left->G.get() == right->G.get() && left->G.get() == out->G.get(),
            "pairing over one group");
    if (!equivariant()) fail("pairing is not G-equivariant");
  }

  Vec apply(const Vec& x, const Vec& y) const {
    Vec acc = out->M.zero();
    const int kn = right->rank();
    for (int i = 0; i < left->rank(); ++i) {
      if (umod(x[i], left->M.moduli[i]) == 0) continue;
      for (int j = 0; j < kn; ++j) {
        i64 c = mul_mod(umod(x[i], left->M.moduli[i]), umod(y[j], right->M.moduli[j]),
                        out->M.exponent() == 0 ? 1 : out->M.exponent());
        if (c == 0) continue;
        acc = out->M.add(acc, out->M.scale(c, table[(size_t)i * kn + j]));
      }
    }
    return acc;
  }

  bool equivariant() const {
    for (int g = 0; g < left->G->n; ++g)
      for (int i = 0; i < left->rank(); ++i)
        for (int j = 0; j < right->rank(); ++j) {
          Vec ei(left->rank(), 0), ej(right->rank(), 0);
          ei[i] = 1;
          ej[j] = 1;
          Vec lhs = apply(left->apply(g, ei), right->apply(g, ej));
          Vec rhs = out->apply(g, table[(size_t)i * right->rank() + j]);
          if (!out->M.eq(lhs, rhs)) return false;
        }
    return true;
  }
};

// G-equivariant homs A -> M, as the fixed-point submodule of Hom(A, M)
struct EquivariantHoms {
  HomGModule hom;
  KernelData fixed;

  ModuleHom pick(const Vec& v) const {
    return hom.to_hom(hom.gm.M.reduce(fixed.inclusion.apply(v)));
  }

  ModuleHom random(Rng& rng) const {
    Vec v(fixed.module.rank());
    for (int i = 0; i < fixed.module.rank(); ++i)
      v[i] = rng.below(fixed.module.moduli[i]);
    return pick(v);
  }
};

inline EquivariantHoms equivariant_homs(const GModule& A, const GModule& M) {
  EquivariantHoms out;
  out.hom = hom_gmodule(A, M);
  const int r = out.hom.gm.rank();
  const auto& G = *A.G;
  Mat stack(G.n * r, r);
  std::vector<i64> mods;
  mods.reserve((size_t)G.n * r);
  for (int g = 0; g < G.n; ++g) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        stack(g * r + i, j) = out.hom.gm.act[g](i, j) - (i == j ? 1 : 0);
    mods.insert(mods.end(), out.hom.gm.M.moduli.begin(), out.hom.gm.M.moduli.end());
  }
  FinAbModule big = mods.empty() ? FinAbModule{} : FinAbModule(mods);
  out.fixed = kernel(ModuleHom(out.hom.gm.M, big, std::move(stack)));
  return out;
}

// evaluation Hom(C, A) x C -> A
inline Pairing eval_pairing(const HomGModule& hom, const GModulePtr& homp,
                            const GModulePtr& C, const GModulePtr& A) {
  std::vector<Vec> t;
  const int kh = hom.gm.rank(), kc = C->rank();
  t.reserve((size_t)kh * kc);
  for (int i = 0; i < kh; ++i) {
    Vec ei(kh, 0);
    ei[i] = 1;
    ModuleHom phi = hom.to_hom(ei);
    for (int j = 0; j < kc; ++j) {
      Vec ej(kc, 0);
      ej[j] = 1;
      t.push_back(phi.apply(ej));
    }
  }
  return Pairing(homp, C, A, std::move(t));
}

// M x N -> M (x) N
inline Pairing tensor_pairing(const GModulePtr& M, const GModulePtr& N,
                              const TensorGModule& ts, const GModulePtr& tsp) {
  std::vector<Vec> t;
  for (int i = 0; i < M->rank(); ++i)
    for (int j = 0; j < N->rank(); ++j) {
      Vec ei(M->rank(), 0), ej(N->rank(), 0);
      ei[i] = 1;
      ej[j] = 1;
      t.push_back(ts.pure(ei, ej));
    }
  return Pairing(M, N, tsp, std::move(t));
}

}  // namespace fincoh
