#pragma once

#include "fincoh/extension.hpp"

namespace fincoh {

// Coordinates of every element of an abelian(ized) group in the
// invariant-factor decomposition.
struct AbelianCoords {
  FinAbModule module;
  std::vector<Vec> coord;  // per group element
};

inline AbelianCoords abelian_coords(const FiniteGroup& g) {
  require(g.abelian(), "abelian_coords: group not abelian");
  AbelianCoords out;
  if (g.n == 1) {
    out.module = FinAbModule{};
    out.coord.assign(1, Vec{});
    return out;
  }
  Mat rel(g.n, g.n * g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      int c = a * g.n + b;
      rel(a, c) += 1;
      rel(b, c) += 1;
      rel(g.mul(a, b), c) -= 1;
    }
  auto pres = present(rel);
  out.module = pres.module;
  for (int a = 0; a < g.n; ++a) {
    Vec e(g.n, 0);
    e[a] = 1;
    out.coord.push_back(out.module.reduce(mul(pres.proj, e)));
  }
  return out;
}

// abelianization together with the quotient map on elements
struct AbelianizationData {
  AbelianCoords ab;                // coordinates of cosets
  std::vector<Vec> elt_coord;      // per element of the original group
};

inline AbelianizationData abelianization(const FiniteGroup& g) {
  auto comm = g.commutator_subgroup();
  std::vector<int> coset(g.n, -1);
  std::vector<int> rep;
  for (int a = 0; a < g.n; ++a) {
    if (coset[a] >= 0) continue;
    int c = (int)rep.size();
    rep.push_back(a);
    for (int s : comm) coset[g.mul(a, s)] = c;
  }
  int m = (int)rep.size();
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a * m + b] = coset[g.mul(rep[a], rep[b])];
  FiniteGroup q(m, std::move(t), g.name + "^ab");
  AbelianizationData out;
  out.ab = abelian_coords(q);
  for (int a = 0; a < g.n; ++a) out.elt_coord.push_back(out.ab.coord[coset[a]]);
  return out;
}

inline std::vector<i64> units_mod(i64 q) {
  std::vector<i64> us;
  for (i64 u = 1; u < q; ++u)
    if (gcd_i64(u, q) == 1) us.push_back(u);
  return us;
}

// random multiplicative character G -> (Z/q)^*
inline std::vector<i64> random_character(Rng& rng, const FiniteGroup& g, i64 q) {
  auto abd = abelianization(g);
  const auto& inv = abd.ab.module.moduli;
  auto us = units_mod(q);
  std::vector<i64> gen_val(inv.size(), 1);
  for (size_t i = 0; i < inv.size(); ++i) {
    std::vector<i64> ok;
    for (i64 u : us)
      if (pow_mod(u, inv[i], q) == 1) ok.push_back(u);
    gen_val[i] = ok[rng.below((i64)ok.size())];
  }
  std::vector<i64> chi(g.n, 1);
  for (int a = 0; a < g.n; ++a)
    for (size_t i = 0; i < inv.size(); ++i)
      chi[a] = mul_mod(chi[a], pow_mod(gen_val[i], abd.elt_coord[a][i], q), q);
  return chi;
}

inline std::optional<Mat> invert_matrix_mod(const Mat& P, i64 q) {
  std::vector<Vec> cols;
  for (int j = 0; j < P.cols; ++j) {
    Vec e(P.rows, 0);
    e[j] = 1;
    cols.push_back(e);
  }
  auto sols = solve_mod(P, std::vector<i64>(P.rows, q), cols);
  Mat inv(P.rows, P.cols);
  for (int j = 0; j < P.cols; ++j) {
    if (!sols[j]) return std::nullopt;
    for (int i = 0; i < P.rows; ++i) inv(i, j) = umod((*sols[j])[i], q);
  }
  // require a two-sided inverse (rules out non-injective solutions)
  Mat a = mul(P, inv), b = mul(inv, P);
  for (int i = 0; i < P.rows; ++i)
    for (int j = 0; j < P.cols; ++j) {
      i64 want = i == j ? 1 : 0;
      if (umod(a(i, j), q) != want || umod(b(i, j), q) != want) return std::nullopt;
    }
  return inv;
}

// random G-module over Z/q built from character, permutation, and trivial
// blocks, optionally hidden by a change of basis
inline GModulePtr random_gmodule(Rng& rng, const GroupPtr& G, i64 q, int max_rank = 2) {
  struct Block {
    std::vector<Mat> act;
    std::vector<i64> mods;
  };
  auto character_block = [&](i64 mod) {
    Block b;
    auto chi = random_character(rng, *G, mod);
    b.mods = {mod};
    for (int g = 0; g < G->n; ++g) b.act.push_back(Mat::from_rows({{chi[g]}}));
    return b;
  };
  auto permutation_block = [&]() -> std::optional<Block> {
    // cosets of the subgroup generated by one random element
    std::vector<int> h = G->closure({(int)rng.below(G->n)});
    int m = G->n / (int)h.size();
    if (m < 2 || m > max_rank) return std::nullopt;
    std::vector<int> coset(G->n, -1);
    std::vector<int> rep;
    for (int a = 0; a < G->n; ++a) {
      if (coset[a] >= 0) continue;
      rep.push_back(a);
      for (int s : h) coset[G->mul(a, s)] = (int)rep.size() - 1;
    }
    Block b;
    b.mods.assign(m, q);
    for (int g = 0; g < G->n; ++g) {
      Mat p(m, m);
      for (int c = 0; c < m; ++c) p(coset[G->mul(g, rep[c])], c) = 1;
      b.act.push_back(std::move(p));
    }
    return b;
  };

  std::vector<Block> blocks;
  int rank = 0;
  while (rank == 0 || (rank < max_rank && rng.coin())) {
    int kind = (int)rng.below(4);
    if (kind == 3) {
      if (auto b = permutation_block()) {
        rank += (int)b->mods.size();
        blocks.push_back(std::move(*b));
        continue;
      }
      kind = (int)rng.below(3);
    }
    i64 mod = q;
    if (kind == 2) {
      // a proper sub-modulus keeps mixed invariant chains in the pool
      i64 p = 2;
      int e = 1;
      prime_power(q, p, e);
      if (e > 1) mod = q / p;
    }
    blocks.push_back(kind == 0 ? Block{std::vector<Mat>(G->n, Mat::identity(1)), {mod}}
                               : character_block(mod));
    rank += 1;
  }
  std::vector<i64> mods;
  for (const auto& b : blocks) mods.insert(mods.end(), b.mods.begin(), b.mods.end());
  std::vector<Mat> act(G->n);
  for (int g = 0; g < G->n; ++g) {
    Mat m((int)mods.size(), (int)mods.size());
    int off = 0;
    for (const auto& b : blocks) {
      int r = (int)b.mods.size();
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(off + i, off + j) = b.act[g](i, j);
      off += r;
    }
    act[g] = std::move(m);
  }
  bool uniform = true;
  for (i64 m : mods) uniform = uniform && m == mods[0];
  if (uniform && mods.size() > 1 && rng.coin()) {
    // hide the block structure by a change of basis
    for (int attempt = 0; attempt < 20; ++attempt) {
      Mat P((int)mods.size(), (int)mods.size());
      for (auto& v : P.a) v = rng.below(q);
      auto Pi = invert_matrix_mod(P, q);
      if (!Pi) continue;
      for (int g = 0; g < G->n; ++g) {
        Mat m = mul(P, mul(act[g], *Pi));
        for (auto& v : m.a) v = umod(v, q);
        act[g] = std::move(m);
      }
      break;
    }
  }
  return gmod(GModule(G, FinAbModule(mods), std::move(act), "Mrand"));
}

// random extension of C by A over G: a random 1-cocycle valued in Hom(C,A)
// twists the product action, and the splitting is randomized afterwards
inline SplitExtension random_extension(Rng& rng, const GModulePtr& A,
                                       const GModulePtr& C,
                                       const Limits& lim = Limits{}) {
  auto homCA = hom_gmodule(*C, *A);
  auto homp = gmod(homCA.gm);
  auto gc = cohomology(homp, 1, lim);
  Cochain chi0 = random_cocycle(rng, gc);
  auto E = extension_from_cocycle(A, C, homCA, chi0, lim);
  if (rng.coin()) {
    // exercise splitting-independence: any additive psi : C -> A reshapes s
    Mat psi(A->rank(), C->rank());
    for (int i = 0; i < A->rank(); ++i)
      for (int j = 0; j < C->rank(); ++j) {
        i64 g = gcd_i64(C->M.moduli[j], A->M.moduli[i]);
        psi(i, j) = (A->M.moduli[i] / g) * rng.below(g);
      }
    E = resplit(E, ModuleHom(C->M, A->M, std::move(psi)));
  }
  return E;
}

// default instance pool for randomized sweeps
struct InstancePool {
  std::vector<GroupPtr> groups;
  std::vector<i64> moduli;
};

inline InstancePool default_pool() {
  InstancePool p;
  p.groups = {cyclic_group(2),
              cyclic_group(3),
              cyclic_group(4),
              product_group(*cyclic_group(2), *cyclic_group(2)),
              cyclic_group(9),
              symmetric_group_3(),
              dihedral_group_4(),
              product_group(*cyclic_group(3), *cyclic_group(3))};
  p.moduli = {2, 3, 4, 8, 9, 27};
  return p;
}

}  // namespace fincoh
