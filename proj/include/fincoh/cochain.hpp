#pragma once

#include "fincoh/gmodule.hpp"

namespace fincoh {

// Resource bounds for table-backed constructions.  |G|^(i+1) tables are the
// binding constraint, so everything that grows a table checks first.
struct Limits {
  int degree_cap = 3;
  int max_group_order = 24;
  i64 table_bound = (i64)1 << 22;  // max entries of one cochain table
};

inline i64 table_entries(int n, int deg, int rank, const Limits& lim) {
  i64 cells = 1;
  for (int i = 0; i < deg; ++i) {
    cells *= n;
    if (cells > lim.table_bound) throw size_error("cochain table exceeds bound");
  }
  i64 total = cells * std::max(rank, 1);
  if (total > lim.table_bound) throw size_error("cochain table exceeds bound");
  return cells * rank;
}

// Inhomogeneous cochain G^deg -> M as a dense table; degree 0 is a single
// module element.  Layout: flat[tuple * rank + c] with the tuple index
// t = ((g_1 n + g_2) n + ...) + g_deg.
struct Cochain {
  GModulePtr M;
  int deg = 0;
  Vec flat;

  Cochain() = default;
  Cochain(GModulePtr m, int d, const Limits& lim = Limits{})
      : M(std::move(m)), deg(d) {
    flat.assign(table_entries(M->G->n, deg, M->rank(), lim), 0);
  }

  i64 tuples() const { return M->rank() == 0 ? ipow(deg) : (i64)flat.size() / M->rank(); }

  i64 ipow(int d) const {
    i64 t = 1;
    for (int i = 0; i < d; ++i) t *= M->G->n;
    return t;
  }

  Vec at(i64 t) const {
    Vec v(M->rank());
    for (int c = 0; c < M->rank(); ++c) v[c] = flat[t * M->rank() + c];
    return v;
  }

  void set(i64 t, const Vec& v) {
    for (int c = 0; c < M->rank(); ++c) flat[t * M->rank() + c] = v[c];
  }

  i64 index(const std::vector<int>& tuple) const {
    i64 t = 0;
    for (int g : tuple) t = t * M->G->n + g;
    return t;
  }

  Vec at_tuple(const std::vector<int>& tuple) const { return at(index(tuple)); }

  void reduce() {
    const int k = M->rank();
    for (i64 t = 0; t < (i64)flat.size() / std::max(k, 1); ++t)
      for (int c = 0; c < k; ++c)
        flat[t * k + c] = umod(flat[t * k + c], M->M.moduli[c]);
  }

  bool is_zero() const {
    const int k = M->rank();
    for (size_t i = 0; i < flat.size(); ++i)
      if (umod(flat[i], M->M.moduli[i % k]) != 0) return false;
    return true;
  }
};

inline Cochain operator+(const Cochain& a, const Cochain& b) {
  Cochain c = a;
  for (size_t i = 0; i < c.flat.size(); ++i) c.flat[i] += b.flat[i];
  c.reduce();
  return c;
}

inline Cochain operator-(const Cochain& a, const Cochain& b) {
  Cochain c = a;
  for (size_t i = 0; i < c.flat.size(); ++i) c.flat[i] -= b.flat[i];
  c.reduce();
  return c;
}

inline Cochain scaled(i64 n, const Cochain& a) {
  Cochain c = a;
  for (auto& v : c.flat) v *= n;
  c.reduce();
  return c;
}

inline bool cochain_eq(const Cochain& a, const Cochain& b) {
  return (a - b).is_zero();
}

// next tuple in row-major order; returns false after the last one
inline bool next_tuple(std::vector<int>& t, int n) {
  for (int i = (int)t.size() - 1; i >= 0; --i) {
    if (++t[i] < n) return true;
    t[i] = 0;
  }
  return false;
}

// (df)(g_1,...,g_{i+1}) = g_1 f(g_2,...) + sum_j (-1)^j f(...,g_j g_{j+1},...)
//                        + (-1)^{i+1} f(g_1,...,g_i)
inline Cochain differential(const Cochain& f, const Limits& lim = Limits{}) {
  const auto& G = *f.M->G;
  const int i = f.deg, k = f.M->rank();
  Cochain out(f.M, i + 1, lim);
  std::vector<int> t(i + 1, 0);
  std::vector<int> sub(i);
  i64 ot = 0;
  do {
    Vec acc(k, 0);
    for (int c = 0; c < i; ++c) sub[c] = t[c + 1];
    Vec head = f.M->apply(t[0], f.at_tuple(sub));
    for (int c = 0; c < k; ++c) acc[c] += head[c];
    for (int j = 1; j <= i; ++j) {
      for (int c = 0; c < i; ++c)
        sub[c] = c < j - 1 ? t[c] : (c == j - 1 ? G.mul(t[j - 1], t[j]) : t[c + 1]);
      Vec mid = f.at_tuple(sub);
      i64 s = (j % 2) ? -1 : 1;
      for (int c = 0; c < k; ++c) acc[c] += s * mid[c];
    }
    for (int c = 0; c < i; ++c) sub[c] = t[c];
    Vec tail = f.at_tuple(sub);
    i64 s = ((i + 1) % 2) ? -1 : 1;
    for (int c = 0; c < k; ++c) acc[c] += s * tail[c];
    out.set(ot++, f.M->M.reduce(acc));
  } while (next_tuple(t, G.n));
  return out;
}

// (f cup g)(s, t) = pairing(f(s), (s_1 ... s_i) g(t))
inline Cochain cup(const Cochain& f, const Cochain& g, const Pairing& pr,
                   const Limits& lim = Limits{}) {
  require(pr.left.get() == f.M.get() && pr.right.get() == g.M.get(),
          "cup: pairing does not match cochain coefficients");
  const auto& G = *f.M->G;
  Cochain out(pr.out, f.deg + g.deg, lim);
  const i64 gt = g.tuples();
  std::vector<int> s(f.deg, 0);
  i64 si = 0;
  do {
    Vec fv = f.at(si++);
    int prod = G.prod(s);
    for (i64 ti = 0; ti < gt; ++ti) {
      Vec gv = g.M->apply(prod, g.at(ti));
      out.set((si - 1) * gt + ti, pr.apply(fv, gv));
    }
  } while (next_tuple(s, G.n));
  return out;
}

// (s* f)(t_1,...,t_i) = s . f(s^{-1} t_1 s, ..., s^{-1} t_i s)
inline Cochain conjugate_cochain(int s, const Cochain& f) {
  const auto& G = *f.M->G;
  Cochain out(f.M, f.deg);
  std::vector<int> t(f.deg, 0), u(f.deg);
  i64 ti = 0;
  int sinv = G.inverse(s);
  do {
    for (int c = 0; c < f.deg; ++c) u[c] = G.mul(G.mul(sinv, t[c]), s);
    out.set(ti++, f.M->apply(s, f.at_tuple(u)));
  } while (next_tuple(t, G.n));
  return out;
}

// f . j on tuples, with coefficients restricted through j
inline Cochain restrict_cochain(const Cochain& f, const GroupHom& j,
                                const GModulePtr& restricted_coeffs) {
  require(j.tgt.get() == f.M->G.get(), "restrict: embedding target mismatch");
  Cochain out(restricted_coeffs, f.deg);
  std::vector<int> t(f.deg, 0), u(f.deg);
  i64 ti = 0;
  do {
    for (int c = 0; c < f.deg; ++c) u[c] = j(t[c]);
    out.set(ti++, f.at_tuple(u));
  } while (next_tuple(t, j.src->n));
  return out;
}

inline Cochain random_cochain(Rng& rng, const GModulePtr& M, int deg,
                              const Limits& lim = Limits{}) {
  Cochain f(M, deg, lim);
  const int k = M->rank();
  for (size_t i = 0; i < f.flat.size(); ++i)
    f.flat[i] = rng.below(M->M.moduli[i % std::max(k, 1)]);
  return f;
}

// degree-0 cochain from a module element
inline Cochain cochain_of(const GModulePtr& M, const Vec& v) {
  Cochain f(M, 0);
  f.set(0, M->M.reduce(v));
  return f;
}

// post-compose values with a module hom (coefficient map)
inline Cochain map_values(const Cochain& f, const ModuleHom& h, const GModulePtr& tgt) {
  Cochain out(tgt, f.deg);
  for (i64 t = 0; t < f.tuples(); ++t) out.set(t, h.apply(f.at(t)));
  return out;
}

}  // namespace fincoh
