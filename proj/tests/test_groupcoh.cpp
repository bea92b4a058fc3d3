#include <catch2/catch_amalgamated.hpp>

#include "fincoh/groupcoh.hpp"

using namespace fincoh;

namespace {

GModulePtr unipotent_z3() {
  // (Z/3)^2 with the generator of Z/3 acting by [[1,1],[0,1]]
  auto G = cyclic_group(3);
  Mat u = Mat::from_rows({{1, 1}, {0, 1}});
  std::vector<Mat> act{Mat::identity(2), u, mul(u, u)};
  return gmod(GModule(G, FinAbModule({3, 3}), act, "U"));
}

GModulePtr sign_on_z5() {
  auto G = cyclic_group(2);
  std::vector<Mat> act{Mat::identity(1), Mat::from_rows({{4}})};
  return gmod(GModule(G, FinAbModule({5}), act, "Z5-"));
}

GModulePtr sign_on_z4_s3() {
  // Z/4 with S_3 acting through the sign character
  auto G = symmetric_group_3();
  std::vector<Mat> act(G->n);
  // parity of a permutation element: track via the permutation group structure;
  // S3 here is generated by a transposition (odd) and a 3-cycle (even)
  // element parity = parity of its expression; recover from order:
  for (int g = 0; g < G->n; ++g) {
    int ord = G->order_of(g);
    i64 s = (ord == 2) ? 3 : 1;  // transpositions act by -1
    act[g] = Mat::from_rows({{s}});
  }
  return gmod(GModule(G, FinAbModule({4}), act, "Z4sgn"));
}

// number of cocycles at degree i by full-table enumeration
i64 brute_cocycle_count(const GModulePtr& M, int i) {
  Cochain f(M, i);
  const int k = M->rank();
  std::vector<i64> mods(f.flat.size());
  for (size_t t = 0; t < f.flat.size(); ++t) mods[t] = M->M.moduli[t % k];
  i64 count = 0;
  for (;;) {
    if (differential(f).is_zero()) ++count;
    size_t j = 0;
    while (j < f.flat.size() && f.flat[j] + 1 == mods[j]) f.flat[j++] = 0;
    if (j == f.flat.size()) break;
    ++f.flat[j];
  }
  return count;
}

i64 brute_cohomology_order(const GModulePtr& M, int i) {
  i64 z_i = brute_cocycle_count(M, i);
  if (i == 0) return z_i;
  i64 c_prev = 1;
  Cochain prev(M, i - 1);
  for (size_t t = 0; t < prev.flat.size(); ++t)
    c_prev *= M->M.moduli[t % M->rank()];
  i64 z_prev = brute_cocycle_count(M, i - 1);
  return z_i / (c_prev / z_prev);
}

}  // namespace

TEST_CASE("differential reference identities") {
  auto M = unipotent_z3();
  SECTION("degree 0: (dm)(s) = s m - m") {
    Cochain m = cochain_of(M, {1, 2});
    Cochain dm = differential(m);
    for (int g = 0; g < 3; ++g) {
      Vec expect = M->M.sub(M->apply(g, {1, 2}), {1, 2});
      CHECK(dm.at(g) == expect);
    }
  }
  SECTION("d.d = 0 on random cochains") {
    Rng rng(11);
    std::vector<GModulePtr> pool{unipotent_z3(), sign_on_z5(), sign_on_z4_s3()};
    for (int trial = 0; trial < 50; ++trial) {
      const auto& m = pool[rng.below((i64)pool.size())];
      int deg = (int)rng.below(3);
      Cochain f = random_cochain(rng, m, deg);
      CHECK(differential(differential(f)).is_zero());
    }
  }
  SECTION("homomorphisms with trivial action are 1-cocycles") {
    auto G = cyclic_group(4);
    auto M = gmod(GModule::trivial(G, FinAbModule({8})));
    Cochain f(M, 1);
    for (int g = 0; g < 4; ++g) f.set(g, {2 * g});  // g -> 2g is a hom Z/4 -> Z/8
    CHECK(differential(f).is_zero());
  }
}

TEST_CASE("cohomology of small reference modules") {
  SECTION("H^i(Z/3, Z/3 trivial) = Z/3 for i = 0,1,2, against enumeration") {
    auto M = gmod(GModule::trivial(cyclic_group(3), FinAbModule({3})));
    for (int i = 0; i <= 2; ++i) {
      auto gc = cohomology(M, i);
      CHECK(gc.H.invariant_factors() == std::vector<i64>{3});
      CHECK(gc.H.order() == brute_cohomology_order(M, i));
    }
  }
  SECTION("H^0 is the fixed-point module") {
    auto gc = cohomology(sign_on_z5(), 0);
    CHECK(gc.H.is_zero());
  }
  SECTION("H^1 with trivial action equals Hom(G, M)") {
    auto G = product_group(*cyclic_group(2), *cyclic_group(2));
    auto M = gmod(GModule::trivial(G, FinAbModule({2})));
    auto gc = cohomology(M, 1);
    CHECK(gc.H.invariant_factors() == std::vector<i64>{2, 2});
  }
}

TEST_CASE("H^1 equals Hom(G,M) for trivial coefficients across groups") {
  for (const auto& g :
       {cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group_3(),
        dihedral_group_4(), product_group(*cyclic_group(3), *cyclic_group(3))}) {
    for (i64 q : {2, 3, 4, 9}) {
      auto M = gmod(GModule::trivial(g, FinAbModule({q})));
      auto gc = cohomology(M, 1);
      auto hom = hom_module(FinAbModule(abelianization_invariants(*g)),
                            FinAbModule({q}));
      CHECK(gc.H.invariant_factors() == hom.module.invariant_factors());
    }
  }
}

TEST_CASE("cup products") {
  SECTION("degree 0 cup is the pairing of module elements") {
    auto G = cyclic_group(3);
    auto M = gmod(GModule::trivial(G, FinAbModule({9})));
    auto ts = tensor_gmodule(*M, *M);
    auto tsp = gmod(ts.gm);
    auto pr = tensor_pairing(M, M, ts, tsp);
    Cochain a = cochain_of(M, {4}), b = cochain_of(M, {5});
    Cochain c = cup(a, b, pr);
    CHECK(c.deg == 0);
    CHECK(c.at(0) == ts.pure({4}, {5}));
  }
  SECTION("x cup x is the nonzero class of H^2(Z/2, Z/2)") {
    auto G = cyclic_group(2);
    auto M = gmod(GModule::trivial(G, FinAbModule({2})));
    auto ts = tensor_gmodule(*M, *M);
    auto tsp = gmod(ts.gm);
    auto pr = tensor_pairing(M, M, ts, tsp);
    Cochain x(M, 1);
    x.set(1, {1});  // the isomorphism Z/2 -> Z/2
    CHECK(differential(x).is_zero());
    Cochain xx = cup(x, x, pr);
    auto gc = cohomology(tsp, 2);
    CHECK(gc.H.invariant_factors() == std::vector<i64>{2});
    CHECK_FALSE(gc.is_zero_class(xx));
  }
  SECTION("x cup x vanishes in H^2(Z/3, Z/3)") {
    auto G = cyclic_group(3);
    auto M = gmod(GModule::trivial(G, FinAbModule({3})));
    auto ts = tensor_gmodule(*M, *M);
    auto tsp = gmod(ts.gm);
    auto pr = tensor_pairing(M, M, ts, tsp);
    Cochain x(M, 1);
    x.set(1, {1});
    x.set(2, {2});
    CHECK(differential(x).is_zero());
    auto gc = cohomology(tsp, 2);
    CHECK(gc.is_zero_class(cup(x, x, pr)));
  }
  SECTION("Leibniz rule d(f cup g) = df cup g + (-1)^deg f cup dg") {
    Rng rng(17);
    std::vector<GModulePtr> pool{unipotent_z3(), sign_on_z4_s3()};
    for (const auto& M : pool) {
      auto ts = tensor_gmodule(*M, *M);
      auto tsp = gmod(ts.gm);
      auto pr = tensor_pairing(M, M, ts, tsp);
      for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2 - i; ++j)
          for (int trial = 0; trial < 4; ++trial) {
            Cochain f = random_cochain(rng, M, i);
            Cochain g = random_cochain(rng, M, j);
            Cochain lhs = differential(cup(f, g, pr));
            Cochain rhs = cup(differential(f), g, pr) +
                          scaled(i % 2 ? -1 : 1, cup(f, differential(g), pr));
            CHECK(cochain_eq(lhs, rhs));
          }
    }
  }
  SECTION("associativity at the cochain level") {
    Rng rng(23);
    auto M = gmod(GModule::trivial(cyclic_group(4), FinAbModule({4})));
    auto t2 = tensor_gmodule(*M, *M);
    auto t2p = gmod(t2.gm);
    auto t3a = tensor_gmodule(t2.gm, *M);   // (M x M) x M
    auto t3ap = gmod(t3a.gm);
    auto t3b = tensor_gmodule(*M, t2.gm);   // M x (M x M)
    auto t3bp = gmod(t3b.gm);
    auto pr12 = tensor_pairing(M, M, t2, t2p);
    auto pr3a = tensor_pairing(t2p, M, t3a, t3ap);
    auto pr3b = tensor_pairing(M, t2p, t3b, t3bp);
    // both triple products land in rank-1 Z/4 modules; compare values through
    // the canonical reassociation of raw coordinates
    REQUIRE(t3a.gm.M.invariant_factors() == t3b.gm.M.invariant_factors());
    for (int trial = 0; trial < 6; ++trial) {
      Cochain f = random_cochain(rng, M, 1);
      Cochain g = random_cochain(rng, M, 1);
      Cochain h = random_cochain(rng, M, 1);
      Cochain left = cup(cup(f, g, pr12), h, pr3a);
      Cochain right = cup(f, cup(g, h, pr12), pr3b);
      // reassociate: for rank-1 factors both raw layouts coincide
      CHECK(left.flat == right.flat);
    }
  }
}

TEST_CASE("shift and cone") {
  auto M = unipotent_z3();
  auto pcx = plain_complex(M, 3);
  SECTION("shift by zero is the identity") {
    auto s = shifted(pcx.cx, 0);
    CHECK(s->lo == pcx.cx->lo);
    for (size_t i = 0; i < s->d.size(); ++i) CHECK(s->d[i] == pcx.cx->d[i]);
  }
  SECTION("shift by 1 twice matches shift by 2") {
    auto s1 = shifted(shifted(pcx.cx, 1), 1);
    auto s2 = shifted(pcx.cx, 2);
    CHECK(s1->lo == s2->lo);
    for (size_t i = 0; i < s1->d.size(); ++i) CHECK(s1->d[i] == s2->d[i]);
  }
  SECTION("H^i(X[1]) = H^{i+1}(X)") {
    ComplexOps ops(pcx.cx);
    ComplexOps sops(shifted(pcx.cx, 1));
    for (int i = 0; i <= 1; ++i)
      CHECK(sops.coh(i).H.invariant_factors() == ops.coh(i + 1).H.invariant_factors());
  }
  SECTION("cone of the identity is acyclic") {
    auto idm = chain_map(pcx.cx, pcx.cx, 0,
                         std::vector<Mat>{Mat::identity(pcx.cx->space(0).rank()),
                                          Mat::identity(pcx.cx->space(1).rank()),
                                          Mat::identity(pcx.cx->space(2).rank()),
                                          Mat::identity(pcx.cx->space(3).rank())});
    auto cc = cone(idm);
    ComplexOps ops(cc.cx);
    for (int i = 0; i <= 2; ++i) CHECK(ops.coh(i).H.is_zero());
  }
  SECTION("cone of the zero map splits") {
    auto N = sign_on_z4_s3();
    auto M3 = gmod(GModule::trivial(symmetric_group_3(), FinAbModule({4})));
    auto px = plain_complex(M3, 3);
    auto py = plain_complex(N, 3);
    std::vector<Mat> zmaps;
    for (int i = 0; i <= 3; ++i)
      zmaps.push_back(Mat(py.cx->space(i).rank(), px.cx->space(i).rank()));
    auto zf = chain_map(px.cx, py.cx, 0, std::move(zmaps));
    auto cc = cone(zf);
    ComplexOps ops(cc.cx), xops(px.cx), yops(py.cx);
    for (int i = 0; i <= 2; ++i) {
      auto inv = ops.coh(i).H.invariant_factors();
      auto hx = xops.coh(i).H;
      auto hy = i >= 1 ? yops.coh(i - 1).H : FinAbModule{};
      CHECK(inv == direct_sum(hx, hy).invariant_factors());
    }
  }
  SECTION("long exact sequence of a cone") {
    // chain map induced by an equivariant coefficient hom
    auto G = cyclic_group(3);
    auto A = gmod(GModule::trivial(G, FinAbModule({9})));
    auto B = gmod(GModule::trivial(G, FinAbModule({3})));
    Mat red = Mat::from_rows({{1}});
    auto pa = plain_complex(A, 3);
    auto pb = plain_complex(B, 3);
    std::vector<Mat> comp;
    for (int i = 0; i <= 3; ++i) {
      int cells = (int)(pa.cx->space(i).rank());
      Mat m(cells, cells);
      for (int t = 0; t < cells; ++t) m(t, t) = 1;  // reduction mod 3 entrywise
      comp.push_back(std::move(m));
    }
    auto f = chain_map(pa.cx, pb.cx, 0, std::move(comp));
    auto cc = cone(f);
    // SES: 0 -> Y[-1] -> Cone -> X -> 0 and its LES
    ComplexSES ses{shifted(pb.cx, -1), cc.cx, pa.cx, cone_inclusion(cc),
                   cone_projection(cc), "cone LES"};
    ComplexOps aops(ses.A), bops(ses.B), cops(ses.C);
    SESOps sops(ses, aops, bops, cops);
    auto failures = sops.verify_les(2);
    CHECK(failures.empty());
  }
}

TEST_CASE("conjugation acts trivially on cohomology") {
  auto M = sign_on_z4_s3();
  Rng rng(29);
  auto gc = cohomology(M, 1);
  SECTION("identity leaves cochains unchanged") {
    Cochain f = random_cochain(rng, M, 1);
    CHECK(cochain_eq(conjugate_cochain(M->G->id, f), f));
  }
  SECTION("conjugated cocycles are cohomologous") {
    for (int trial = 0; trial < 20; ++trial) {
      Cochain f = random_cocycle(rng, gc);
      int s = (int)rng.below(M->G->n);
      Cochain cf = conjugate_cochain(s, f);
      CHECK(differential(cf).is_zero());
      CHECK(gc.same_class(cf, f));
    }
  }
  SECTION("central elements with trivial action fix cochains pointwise") {
    auto G = cyclic_group(4);
    auto N = gmod(GModule::trivial(G, FinAbModule({8})));
    Cochain f = random_cochain(rng, N, 2);
    CHECK(cochain_eq(conjugate_cochain(2, f), f));
  }
}

TEST_CASE("triangle comparison of cones") {
  // N' = 0: the triangle is the short exact sequence
  // C(G, Z/3) --x3--> C(G, Z/9) --mod 3--> C(G, Z/3)
  auto M = gmod(GModule::trivial(cyclic_group(3), FinAbModule({3})));
  auto N = gmod(GModule::trivial(cyclic_group(3), FinAbModule({9})));
  auto pm = plain_complex(M, 3);
  auto pn = plain_complex(N, 3);
  auto po = plain_complex(M, 3);
  std::vector<Mat> mi, mz, mp, mpz;
  Complex zeroc;
  zeroc.lo = 0;
  zeroc.label = "0";
  for (int i = 0; i <= 3; ++i) zeroc.sp.push_back(FinAbModule{});
  for (int i = 0; i < 3; ++i) zeroc.d.push_back(Mat(0, 0));
  auto zc = make_complex(std::move(zeroc));
  for (int i = 0; i <= 3; ++i) {
    int cells = pm.cx->space(i).rank();
    Mat inc(cells, cells), red(cells, cells);
    for (int t = 0; t < cells; ++t) { inc(t, t) = 3; red(t, t) = 1; }
    mi.push_back(std::move(inc));
    mz.push_back(Mat(0, cells));
    mp.push_back(std::move(red));
    mpz.push_back(Mat(cells, 0));
  }
  TriangleData t{chain_map(pm.cx, pn.cx, 0, mi), chain_map(pm.cx, zc, 0, mz),
                 chain_map(pn.cx, po.cx, 0, mp), chain_map(zc, po.cx, 0, mpz)};
  auto rep = quasi_iso_check(t, 2);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.conclusion_ok);

  SECTION("broken triangle is rejected") {
    // replace iota by the zero map: the composite still vanishes but
    // H(M) -> H(N) + 0 -> H(N) is no longer exact in the middle
    std::vector<Mat> zim;
    for (int i = 0; i <= 3; ++i)
      zim.push_back(Mat(pn.cx->space(i).rank(), pm.cx->space(i).rank()));
    TriangleData tbad{chain_map(pm.cx, pn.cx, 0, zim), t.iotap, t.pi, t.pip};
    auto rep2 = quasi_iso_check(tbad, 2);
    CHECK_FALSE(rep2.hypothesis_ok);
  }
}
