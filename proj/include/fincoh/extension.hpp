#pragma once

#include "fincoh/groupcoh.hpp"

namespace fincoh {

inline bool equivariant(const ModuleHom& h, const GModule& src, const GModule& tgt) {
  for (int g = 0; g < src.G->n; ++g)
    if (!compose(h, src.action_hom(g)).eq(compose(tgt.action_hom(g), h)))
      return false;
  return true;
}

// 0 -> A -> B -> C -> 0 of G-modules with an additive splitting s of pi.
// Exactness, the splitting identities, and the cocycle law are all verified
// at construction.
struct SplitExtension {
  GModulePtr A, B, C;
  ModuleHom iota, pi;  // equivariant
  ModuleHom s;         // additive section of pi, not necessarily equivariant
  ModuleHom t;         // derived: iota.t + s.pi = id_B
  HomGModule homCA;    // Hom(C, A) with the conjugation action
  GModulePtr homp;
  Cochain chi;         // extension cocycle in C^1(G, Hom(C,A))
  Limits lim;

  // chi as an actual hom C -> A at a group element
  ModuleHom chi_hom(int g) const { return homCA.to_hom(chi.at(g)); }
};

// evaluation pairing Hom(C,A) x C -> A for this extension's cup products
inline Pairing chi_pairing(const SplitExtension& E) {
  return eval_pairing(E.homCA, E.homp, E.C, E.A);
}

inline SplitExtension split_extension(GModulePtr A, GModulePtr B, GModulePtr C,
                                      ModuleHom iota, ModuleHom pi, ModuleHom s,
                                      const Limits& lim = Limits{}) {
  require(A->G.get() == B->G.get() && B->G.get() == C->G.get(),
          "extension must live over one group");
  require(iota.well_defined() && pi.well_defined(), "structure maps ill-defined");
  require(s.well_defined(), "splitting is not an additive map");
  require(equivariant(iota, *A, *B), "iota is not equivariant");
  require(equivariant(pi, *B, *C), "pi is not equivariant");
  // exactness
  require(kernel(iota).module.is_zero(), "iota is not injective");
  require(image_order(pi) == C->M.order(), "pi is not surjective");
  require(compose(pi, iota).is_zero_hom(), "pi . iota != 0");
  require(image_order(iota) == kernel(pi).module.order(), "im(iota) != ker(pi)");
  require(compose(pi, s).eq(ModuleHom::identity(C->M)), "s does not split pi");

  // t : B -> A with iota.t = id - s.pi
  ModuleHom rem = hom_sub(ModuleHom::identity(B->M), compose(s, pi));
  Mat tm(A->rank(), B->rank());
  {
    std::vector<Vec> cols;
    for (int j = 0; j < B->rank(); ++j) cols.push_back(B->M.reduce(rem.mat.col(j)));
    auto sols = solve_hom(iota, cols);
    for (int j = 0; j < B->rank(); ++j) {
      require(sols[j].has_value(), "id - s.pi does not factor through iota");
      tm.set_col(j, *sols[j]);
    }
  }
  ModuleHom t(B->M, A->M, std::move(tm));
  require(hom_add(compose(iota, t), compose(s, pi)).eq(ModuleHom::identity(B->M)),
          "iota.t + s.pi != id");

  SplitExtension E;
  E.A = std::move(A);
  E.B = std::move(B);
  E.C = std::move(C);
  E.iota = std::move(iota);
  E.pi = std::move(pi);
  E.s = std::move(s);
  E.t = std::move(t);
  E.lim = lim;
  E.homCA = hom_gmodule(*E.C, *E.A);
  E.homp = gmod(E.homCA.gm);

  // chi(g)(c) = g s(g^{-1} c) - s(c); values land in ker(pi) = im(iota)
  const auto& G = *E.A->G;
  E.chi = Cochain(E.homp, 1, lim);
  for (int g = 0; g < G.n; ++g) {
    ModuleHom tw = hom_sub(
        compose(E.B->action_hom(g), compose(E.s, E.C->action_hom(G.inverse(g)))),
        E.s);
    ModuleHom asmap = compose(E.t, tw);
    require(compose(E.iota, asmap).eq(tw), "splitting defect leaves im(iota)");
    E.chi.set(g, E.homCA.from_hom(asmap));
  }
  require(differential(E.chi, lim).is_zero(), "extension cocycle fails dchi = 0");
  return E;
}

// another additive splitting: s' = s + iota . psi
inline SplitExtension resplit(const SplitExtension& E, const ModuleHom& psi) {
  return split_extension(E.A, E.B, E.C, E.iota, E.pi,
                         hom_add(E.s, compose(E.iota, psi)), E.lim);
}

// Extension of C by A with a prescribed extension cocycle chi0 (a 1-cocycle
// valued in Hom(C,A)): B = A + C as a module, with the action twisted by
// phi(g) = chi0(g) . rho_C(g).
inline SplitExtension extension_from_cocycle(const GModulePtr& A, const GModulePtr& C,
                                             const HomGModule& homCA,
                                             const Cochain& chi0,
                                             const Limits& lim = Limits{}) {
  const auto& G = *A->G;
  const int ka = A->rank(), kc = C->rank();
  std::vector<Mat> acts(G.n);
  for (int g = 0; g < G.n; ++g) {
    Mat phi = compose(homCA.to_hom(chi0.at(g)), C->action_hom(g)).mat;
    Mat m(ka + kc, ka + kc);
    for (int i = 0; i < ka; ++i)
      for (int j = 0; j < ka; ++j) m(i, j) = A->act[g](i, j);
    for (int i = 0; i < ka; ++i)
      for (int j = 0; j < kc; ++j) m(i, ka + j) = phi(i, j);
    for (int i = 0; i < kc; ++i)
      for (int j = 0; j < kc; ++j) m(ka + i, ka + j) = C->act[g](i, j);
    acts[g] = std::move(m);
  }
  auto B = gmod(GModule(A->G, direct_sum(A->M, C->M), std::move(acts),
                        A->name + "*" + C->name));
  Mat mi(ka + kc, ka), mp(kc, ka + kc), ms(ka + kc, kc);
  for (int i = 0; i < ka; ++i) mi(i, i) = 1;
  for (int i = 0; i < kc; ++i) mp(i, ka + i) = 1;
  for (int i = 0; i < kc; ++i) ms(ka + i, i) = 1;
  return split_extension(A, B, C, ModuleHom(A->M, B->M, std::move(mi)),
                         ModuleHom(B->M, C->M, std::move(mp)),
                         ModuleHom(C->M, B->M, std::move(ms)), lim);
}

// cochain-level connecting construction: class of iota^{-1} d(s . f)
inline Cochain connect_cocycle(const SplitExtension& E, const Cochain& f) {
  require(f.M.get() == E.C.get(), "connecting expects a C-valued cochain");
  Cochain g = map_values(f, E.s, E.B);
  Cochain dg = differential(g, E.lim);
  // dg has values in im(iota); pull back with t
  Cochain a = map_values(dg, E.t, E.A);
  Cochain back = map_values(a, E.iota, E.B);
  require(cochain_eq(back, dg), "boundary of the lift leaves im(iota)");
  return a;
}

// connecting homomorphism H^i(G,C) -> H^{i+1}(G,A)
inline ModuleHom connecting_map(const SplitExtension& E, int i,
                                const GroupCohomology& hc, ComplexOps& a_ops) {
  Mat m(a_ops.coh(i + 1).H.rank(), hc.H.rank());
  for (int k = 0; k < hc.H.rank(); ++k) {
    Cochain img = connect_cocycle(E, hc.reps[k]);
    auto cls = a_ops.class_of(i + 1, img.flat);
    require(cls.has_value(), "connecting image is not a cocycle");
    m.set_col(k, *cls);
  }
  return ModuleHom(hc.H, a_ops.coh(i + 1).H, std::move(m));
}

// --- the global-sign protocol -------------------------------------------------

// Records which of the two signs make an identity lhs = sign * rhs hold at
// the level of classes, across many instances.  An identity passes when one
// sign works everywhere; instances where both work are degenerate.
struct SignTally {
  bool plus_ok = true;
  bool minus_ok = true;
  i64 checks = 0;
  i64 nondegenerate = 0;
  std::string counterexample;  // first input where neither sign works

  void note(bool plus_works, bool minus_works, const std::string& context) {
    ++checks;
    if (plus_works != minus_works) ++nondegenerate;
    if (!plus_works) plus_ok = false;
    if (!minus_works) minus_ok = false;
    if (!plus_works && !minus_works && counterexample.empty())
      counterexample = context;
  }

  void merge(const SignTally& o) {
    plus_ok = plus_ok && o.plus_ok;
    minus_ok = minus_ok && o.minus_ok;
    checks += o.checks;
    nondegenerate += o.nondegenerate;
    if (counterexample.empty()) counterexample = o.counterexample;
  }

  bool consistent() const { return plus_ok || minus_ok; }

  // +1 / -1 / 0 (fully degenerate); only meaningful when consistent()
  int sign() const { return plus_ok && minus_ok ? 0 : (plus_ok ? 1 : -1); }

  std::string outcome() const {
    if (!consistent()) return "fail";
    if (plus_ok && minus_ok) return "degenerate-pass";
    return plus_ok ? "+1" : "-1";
  }
};

// d^i = sign * (chi cup -) on H^i(G,C): checks random cocycles of one
// extension and records the sign evidence.
inline void check_connecting_vs_cup(const SplitExtension& E, int i, int trials,
                                    Rng& rng, SignTally& tally,
                                    const std::string& context) {
  auto hc = cohomology(E.C, i, E.lim);
  auto pa = plain_complex(E.A, i + 1, E.lim);
  ComplexOps a_ops(pa.cx);
  Pairing pr = chi_pairing(E);
  for (int trial = 0; trial < trials; ++trial) {
    Cochain f = random_cocycle(rng, hc);
    Cochain lhs = connect_cocycle(E, f);
    Cochain rhs = cup(E.chi, f, pr, E.lim);
    bool plus = a_ops.is_coboundary(i + 1, (lhs - rhs).flat);
    bool minus = a_ops.is_coboundary(i + 1, (lhs + rhs).flat);
    tally.note(plus, minus, context + " degree " + std::to_string(i));
  }
}

// --- dual extensions -----------------------------------------------------------

struct DualExtensionData {
  SplitExtension dual;  // C^ -> B^ -> A^ with splitting t^*
  Cochain chi_star;     // 1-cochain valued in Hom(A^, C^)
};

inline DualExtensionData dual_extension(const SplitExtension& E) {
  auto Ad = gmod(E.A->dualized());
  auto Bd = gmod(E.B->dualized());
  auto Cd = gmod(E.C->dualized());
  ModuleHom inc = transpose_hom(E.pi);   // C^ -> B^
  ModuleHom prj = transpose_hom(E.iota); // B^ -> A^
  ModuleHom spl = transpose_hom(E.t);    // A^ -> B^
  DualExtensionData out;
  out.dual = split_extension(Cd, Bd, Ad, inc, prj, spl, E.lim);
  // chi* is the transpose of chi, valued in Hom(A^, C^)
  out.chi_star = Cochain(out.dual.homp, 1, E.lim);
  for (int g = 0; g < E.A->G->n; ++g)
    out.chi_star.set(g, out.dual.homCA.from_hom(transpose_hom(E.chi_hom(g))));
  // displayed identity: chi*(s)(phi) = -s t*(s^{-1} phi) + t*(phi), i.e.
  // chi* is the negative of the dual extension's own cocycle
  require(cochain_eq(out.chi_star, scaled(-1, out.dual.chi)),
          "dual cocycle identity fails");
  return out;
}

// --- pushouts -------------------------------------------------------------------

// pushout of E along an equivariant h : A -> M
inline SplitExtension pushout(const SplitExtension& E, const GModulePtr& Mmod,
                              const ModuleHom& h) {
  require(equivariant(h, *E.A, *Mmod), "pushout map is not equivariant");
  const int km = Mmod->rank(), kb = E.B->rank(), ka = E.A->rank();
  // B' = (M + B) / <(h(a), -iota(a))>
  std::vector<i64> mods = Mmod->M.moduli;
  mods.insert(mods.end(), E.B->M.moduli.begin(), E.B->M.moduli.end());
  Mat rel(km + kb, km + kb + ka);
  for (int i = 0; i < km + kb; ++i) rel(i, i) = mods[i];
  for (int j = 0; j < ka; ++j) {
    for (int i = 0; i < km; ++i) rel(i, km + kb + j) = h.mat(i, j);
    for (int i = 0; i < kb; ++i) rel(km + i, km + kb + j) = -E.iota.mat(i, j);
  }
  auto pres = present(rel);
  const auto& Bp = pres.module;
  auto embed = [&](const Vec& m, const Vec& b) {
    Vec v(km + kb);
    for (int i = 0; i < km; ++i) v[i] = m[i];
    for (int i = 0; i < kb; ++i) v[km + i] = b[i];
    return Bp.reduce(mul(pres.proj, v));
  };
  // action via the diagonal action on M + B
  const auto& G = *E.A->G;
  std::vector<Mat> acts(G.n);
  for (int g = 0; g < G.n; ++g) {
    Mat m(Bp.rank(), Bp.rank());
    for (int k = 0; k < Bp.rank(); ++k) {
      Vec raw = pres.lift.col(k);
      Vec mm(raw.begin(), raw.begin() + km), bb(raw.begin() + km, raw.end());
      m.set_col(k, embed(Mmod->apply(g, Mmod->M.reduce(mm)),
                         E.B->apply(g, E.B->M.reduce(bb))));
    }
    acts[g] = std::move(m);
  }
  auto Bpm = gmod(GModule(E.A->G, Bp, std::move(acts), "push(" + E.B->name + ")"));
  Mat mi(Bp.rank(), km), ms(Bp.rank(), E.C->rank()), mp(E.C->rank(), Bp.rank());
  for (int j = 0; j < km; ++j) {
    Vec em(km, 0);
    em[j] = 1;
    mi.set_col(j, embed(em, Vec(kb, 0)));
  }
  for (int j = 0; j < E.C->rank(); ++j) {
    Vec ec(E.C->rank(), 0);
    ec[j] = 1;
    ms.set_col(j, embed(Vec(km, 0), E.s.apply(ec)));
  }
  for (int k = 0; k < Bp.rank(); ++k) {
    Vec raw = pres.lift.col(k);
    Vec bb(raw.begin() + km, raw.end());
    mp.set_col(k, E.pi.apply(E.B->M.reduce(bb)));
  }
  return split_extension(Mmod, Bpm, E.C, ModuleHom(Mmod->M, Bp, std::move(mi)),
                         ModuleHom(Bp, E.C->M, std::move(mp)),
                         ModuleHom(E.C->M, Bp, std::move(ms)), E.lim);
}

// --- augmentation-ideal extensions ---------------------------------------------

// 0 -> X -> R[X]/I^2 -> R -> 0 for R = Z/p^e and a surjection mu : G -> X;
// the middle term is R + X with g acting by (a, x) -> (a, x + a mu(g)).
struct AugmentationData {
  SplitExtension E;       // A = X, C = R (twists applied by the caller's site)
  FinAbModule X;
  std::vector<Vec> mu;    // per group element
  i64 pe = 0;
};

inline bool is_group_to_module_hom(const FiniteGroup& G, const FinAbModule& X,
                                   const std::vector<Vec>& mu) {
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      if (!X.eq(X.add(mu[a], mu[b]), mu[G.mul(a, b)])) return false;
  return true;
}

inline bool surjective_onto(const FinAbModule& X, const std::vector<Vec>& images) {
  if (X.is_zero()) return true;
  Mat rel(X.rank(), (int)images.size() + X.rank());
  for (int j = 0; j < (int)images.size(); ++j)
    for (int i = 0; i < X.rank(); ++i) rel(i, j) = images[j][i];
  for (int i = 0; i < X.rank(); ++i) rel(i, (int)images.size() + i) = X.moduli[i];
  return present(rel).module.is_zero();
}

inline AugmentationData augmentation_extension(const GroupPtr& G, const FinAbModule& X,
                                               const std::vector<Vec>& mu, i64 pe,
                                               const Limits& lim = Limits{}) {
  require((int)mu.size() == G->n, "mu must be defined on all of G");
  require(pe % X.exponent() == 0, "X exponent must divide the modulus");
  require(is_group_to_module_hom(*G, X, mu), "mu is not a homomorphism");
  require(surjective_onto(X, mu),
          "mu is not surjective; the reciprocity bookkeeping needs all of X");
  const int kx = X.rank();
  std::vector<Mat> acts(G->n);
  for (int g = 0; g < G->n; ++g) {
    Mat m = Mat::identity(1 + kx);
    for (int i = 0; i < kx; ++i) m(1 + i, 0) = mu[g][i];
    acts[g] = std::move(m);
  }
  FinAbModule bmod = direct_sum(FinAbModule({pe}), X);
  auto A = gmod(GModule::trivial(G, X, "X"));
  auto B = gmod(GModule(G, bmod, std::move(acts), "R[X]/I2"));
  auto C = gmod(GModule::trivial(G, FinAbModule({pe}), "R"));
  Mat mi(1 + kx, kx), mp(1, 1 + kx), ms(1 + kx, 1);
  for (int i = 0; i < kx; ++i) mi(1 + i, i) = 1;
  mp(0, 0) = 1;
  ms(0, 0) = 1;
  AugmentationData out;
  out.E = split_extension(A, B, C, ModuleHom(X, bmod, std::move(mi)),
                          ModuleHom(bmod, FinAbModule({pe}), std::move(mp)),
                          ModuleHom(FinAbModule({pe}), bmod, std::move(ms)), lim);
  out.X = X;
  out.mu = mu;
  out.pe = pe;
  // the extension cocycle is mu itself under Hom(R, X) = X
  for (int g = 0; g < G->n; ++g) {
    ModuleHom hm = out.E.chi_hom(g);
    Vec ec{1};
    require(X.eq(hm.apply(ec), mu[g]), "augmentation cocycle differs from mu");
  }
  return out;
}

}  // namespace fincoh
