#pragma once

#include <map>
#include <memory>
#include <set>

#include "fincoh/module.hpp"

namespace fincoh {

// Finite group given by its full multiplication table.  The table laws are
// checked at construction; everything downstream relies on them.
struct FiniteGroup {
  int n = 1;
  std::vector<int> table;  // table[a*n+b] = a*b
  std::vector<int> inv;
  int id = 0;
  std::string name;

  FiniteGroup() : table{0}, inv{0} {}

  FiniteGroup(int order, std::vector<int> t, std::string nm = "G")
      : n(order), table(std::move(t)), name(std::move(nm)) {
    require((int)table.size() == n * n, "Cayley table size mismatch");
    for (int x : table) require(0 <= x && x < n, "Cayley table entry out of range");
    id = -1;
    for (int e = 0; e < n && id < 0; ++e) {
      bool ok = true;
      for (int a = 0; a < n; ++a)
        ok = ok && table[e * n + a] == a && table[a * n + e] == a;
      if (ok) id = e;
    }
    require(id >= 0, "Cayley table has no identity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            fail("Cayley table fails associativity at (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")");
    inv.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (mul(a, b) == id) inv[a] = b;
    for (int a = 0; a < n; ++a) require(inv[a] >= 0, "element without inverse");
  }

  int mul(int a, int b) const { return table[a * n + b]; }
  int inverse(int a) const { return inv[a]; }
  int conj(int s, int a) const { return mul(mul(s, a), inverse(s)); }

  int prod(const std::vector<int>& gs) const {
    int p = id;
    for (int g : gs) p = mul(p, g);
    return p;
  }

  int order_of(int a) const {
    int k = 1, x = a;
    while (x != id) { x = mul(x, a); ++k; }
    return k;
  }

  bool abelian() const {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> closure(std::vector<int> gens) const {
    std::set<int> seen{id};
    std::vector<int> order{id};
    gens.push_back(id);
    for (size_t k = 0; k < order.size(); ++k)
      for (int g : gens) {
        int x = mul(order[k], g);
        if (seen.insert(x).second) order.push_back(x);
      }
    std::sort(order.begin(), order.end());
    return order;
  }

  std::vector<int> commutator_subgroup() const {
    std::vector<int> comms;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        comms.push_back(mul(mul(a, b), mul(inverse(a), inverse(b))));
    return closure(comms);
  }

  // invariant factors of an abelian group, from its table
  std::vector<i64> abelian_invariants() const {
    require(abelian(), "abelian_invariants: group not abelian");
    if (n == 1) return {};
    Mat rel(n, n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int c = a * n + b;
        rel(a, c) += 1;
        rel(b, c) += 1;
        rel(mul(a, b), c) -= 1;
      }
    auto s = snf(rel);
    std::vector<i64> out;
    for (i64 d : s.d)
      if (d >= 2) out.push_back(d);
    return out;
  }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr trivial_group() {
  return std::make_shared<FiniteGroup>(1, std::vector<int>{0}, "1");
}

// quotient by a normal subgroup given as an element list
inline GroupPtr quotient_group(const FiniteGroup& g, const std::vector<int>& nsub) {
  std::vector<int> coset(g.n, -1);
  std::vector<int> rep;
  for (int a = 0; a < g.n; ++a) {
    if (coset[a] >= 0) continue;
    int c = (int)rep.size();
    rep.push_back(a);
    for (int s : nsub) coset[g.mul(a, s)] = c;
    require(coset[a] == c, "quotient_group: subgroup not closed");
  }
  int m = (int)rep.size();
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a * m + b] = coset[g.mul(rep[a], rep[b])];
  return std::make_shared<FiniteGroup>(m, std::move(t), g.name + "/N");
}

inline std::vector<i64> abelianization_invariants(const FiniteGroup& g) {
  return quotient_group(g, g.commutator_subgroup())->abelian_invariants();
}

inline GroupPtr cyclic_group(int m) {
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a * m + b] = (a + b) % m;
  return std::make_shared<FiniteGroup>(m, std::move(t), "Z/" + std::to_string(m));
}

inline GroupPtr product_group(const FiniteGroup& g, const FiniteGroup& h) {
  int m = g.n * h.n;
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int ga = a / h.n, ha = a % h.n, gb = b / h.n, hb = b % h.n;
      t[a * m + b] = g.mul(ga, gb) * h.n + h.mul(ha, hb);
    }
  return std::make_shared<FiniteGroup>(m, std::move(t), g.name + "x" + h.name);
}

// Group generated by permutations of {0..deg-1}; elements are indexed in
// BFS order from the identity, which makes the numbering deterministic.
inline GroupPtr permutation_group(int deg, const std::vector<std::vector<int>>& gens,
                                  const std::string& name = "perm") {
  std::vector<int> idp(deg);
  for (int i = 0; i < deg; ++i) idp[i] = i;
  for (const auto& g : gens) {
    require((int)g.size() == deg, "permutation of wrong degree");
    std::vector<bool> seen(deg, false);
    for (int v : g) {
      require(0 <= v && v < deg && !seen[v], "not a permutation");
      seen[v] = true;
    }
  }
  std::vector<std::vector<int>> elts{idp};
  std::map<std::vector<int>, int> index{{idp, 0}};
  for (size_t k = 0; k < elts.size(); ++k)
    for (const auto& g : gens) {
      std::vector<int> x(deg);
      for (int i = 0; i < deg; ++i) x[i] = g[elts[k][i]];  // g after elts[k]
      if (index.emplace(x, (int)elts.size()).second) elts.push_back(x);
    }
  int m = (int)elts.size();
  require(m <= 1024, "permutation closure too large");
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> x(deg);
      for (int i = 0; i < deg; ++i) x[i] = elts[a][elts[b][i]];
      t[a * m + b] = index.at(x);
    }
  return std::make_shared<FiniteGroup>(m, std::move(t), name);
}

inline GroupPtr symmetric_group_3() {
  return permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, "S3");
}

inline GroupPtr dihedral_group_4() {
  // symmetries of a square: rotation and a reflection
  return permutation_group(4, {{1, 2, 3, 0}, {1, 0, 3, 2}}, "D4");
}

// Homomorphism between finite groups, as an image table.
struct GroupHom {
  GroupPtr src, tgt;
  std::vector<int> img;

  GroupHom() = default;
  GroupHom(GroupPtr s, GroupPtr t, std::vector<int> im)
      : src(std::move(s)), tgt(std::move(t)), img(std::move(im)) {
    require((int)img.size() == src->n, "group hom image table size");
    for (int x : img) require(0 <= x && x < tgt->n, "group hom image out of range");
    for (int a = 0; a < src->n; ++a)
      for (int b = 0; b < src->n; ++b)
        if (tgt->mul(img[a], img[b]) != img[src->mul(a, b)])
          fail("not a group homomorphism at (" + std::to_string(a) + "," +
               std::to_string(b) + ")");
  }

  static GroupHom identity(const GroupPtr& g) {
    std::vector<int> im(g->n);
    for (int i = 0; i < g->n; ++i) im[i] = i;
    return GroupHom(g, g, std::move(im));
  }

  int operator()(int a) const { return img[a]; }

  bool injective() const {
    std::set<int> s(img.begin(), img.end());
    return (int)s.size() == src->n;
  }

  // x . j(t) . x^{-1} pointwise
  GroupHom conjugated_by(int x) const {
    std::vector<int> im(img.size());
    for (size_t a = 0; a < img.size(); ++a) im[a] = tgt->conj(x, img[a]);
    return GroupHom(src, tgt, std::move(im));
  }
};

}  // namespace fincoh
