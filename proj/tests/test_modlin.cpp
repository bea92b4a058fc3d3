#include <catch2/catch_amalgamated.hpp>

#include "fincoh/module.hpp"

using namespace fincoh;

namespace {

Mat random_mat(Rng& rng, int r, int c, i64 lo, i64 hi) {
  Mat m(r, c);
  for (auto& x : m.a) x = lo + rng.below(hi - lo + 1);
  return m;
}

// random unimodular matrix as a product of elementary operations
Mat random_unimodular(Rng& rng, int n, int steps = 20) {
  Mat m = Mat::identity(n);
  for (int s = 0; s < steps; ++s) {
    int i = (int)rng.below(n), j = (int)rng.below(n);
    if (i == j) continue;
    i64 q = (i64)rng.below(5) - 2;
    for (int k = 0; k < n; ++k) m(i, k) += q * m(j, k);
  }
  return m;
}

ModuleHom random_hom(Rng& rng, const FinAbModule& src, const FinAbModule& tgt) {
  // entry (i,j) must be a multiple of tgt_i / gcd(src_j, tgt_i)
  Mat m(tgt.rank(), src.rank());
  for (int i = 0; i < tgt.rank(); ++i)
    for (int j = 0; j < src.rank(); ++j) {
      i64 g = gcd_i64(src.moduli[j], tgt.moduli[i]);
      i64 step = tgt.moduli[i] / g;
      m(i, j) = step * rng.below(g);
    }
  return ModuleHom(src, tgt, std::move(m));
}

// brute-force kernel size by enumeration
i64 enumerated_kernel_order(const ModuleHom& h) {
  i64 n = 0;
  for (const auto& x : h.src.elements())
    if (h.tgt.is_zero_elt(h.apply(x))) ++n;
  return n;
}

}  // namespace

TEST_CASE("smith normal form on the reference matrices") {
  SECTION("identity") {
    auto s = snf(Mat::identity(2));
    CHECK(s.d == std::vector<i64>{1, 1});
    CHECK(s.U == Mat::identity(2));
    CHECK(s.V == Mat::identity(2));
  }
  SECTION("hand-reduced 2x2") {
    auto s = snf(Mat::from_rows({{2, 4}, {6, 8}}));
    CHECK(s.d == std::vector<i64>{2, 4});
  }
  SECTION("zero matrix") {
    auto s = snf(Mat(2, 3));
    CHECK(s.d == std::vector<i64>{0, 0});
    CHECK(s.U == Mat::identity(2));
    CHECK(s.V == Mat::identity(3));
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  Rng rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + (int)rng.below(5), c = 1 + (int)rng.below(5);
    Mat m = random_mat(rng, r, c, -9, 9);
    auto s = snf(m);
    // U m V = D
    Mat d = mul(mul(s.U, m), s.V);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        CHECK(d(i, j) == (i == j && i < (int)s.d.size() ? s.d[i] : 0));
    // tracked inverses are genuine inverses (hence U, V unimodular)
    CHECK(mul(s.U, s.Ui) == Mat::identity(r));
    CHECK(mul(s.V, s.Vi) == Mat::identity(c));
    // divisibility chain
    for (int i = 0; i + 1 < (int)s.d.size(); ++i)
      if (s.d[i] != 0 && s.d[i + 1] != 0) CHECK(s.d[i + 1] % s.d[i] == 0);
    // invariance under unimodular pre/post multiplication
    Mat m2 = mul(random_unimodular(rng, r), mul(m, random_unimodular(rng, c)));
    CHECK(snf(m2).d == s.d);
  }
}

TEST_CASE("kernel of the reference homs") {
  FinAbModule z4({4});
  SECTION("multiplication by 2 on Z/4") {
    auto k = kernel(ModuleHom(z4, z4, Mat::from_rows({{2}})));
    CHECK(k.module.invariant_factors() == std::vector<i64>{2});
    CHECK(k.inclusion.apply({1}) == Vec{2});
  }
  SECTION("zero map") {
    FinAbModule m({2, 6});
    auto k = kernel(ModuleHom::zero(m, FinAbModule({3})));
    CHECK(k.module.invariant_factors() == m.invariant_factors());
  }
}

TEST_CASE("kernel and cokernel match enumeration on random homs") {
  Rng rng(7);
  std::vector<FinAbModule> pool = {FinAbModule({9, 3}), FinAbModule({4}),
                                   FinAbModule({2, 4}), FinAbModule({3, 3}),
                                   FinAbModule({6}), FinAbModule({8, 2})};
  for (int trial = 0; trial < 80; ++trial) {
    const auto& src = pool[rng.below((i64)pool.size())];
    const auto& tgt = pool[rng.below((i64)pool.size())];
    auto h = random_hom(rng, src, tgt);
    REQUIRE(h.well_defined());

    auto k = kernel(h);
    CHECK(k.module.order() == enumerated_kernel_order(h));
    // inclusion lands in the kernel and is injective
    for (int j = 0; j < k.module.rank(); ++j) {
      Vec gen(k.module.rank(), 0);
      gen[j] = 1;
      CHECK(h.tgt.is_zero_elt(h.apply(k.inclusion.apply(gen))));
    }
    CHECK(kernel(k.inclusion).module.is_zero());

    // |ker| * |im| = |source|
    i64 im = image_order(h);
    CHECK(k.module.order() * im == src.order());

    auto c = cokernel(h);
    CHECK(c.module.order() * im == tgt.order());
    // projection kills the image and is surjective
    for (int j = 0; j < src.rank(); ++j) {
      Vec gen(src.rank(), 0);
      gen[j] = 1;
      CHECK(c.module.is_zero_elt(c.projection.apply(h.apply(gen))));
    }
    CHECK(image_order(c.projection) == c.module.order());
  }
}

TEST_CASE("cokernel reference cases") {
  FinAbModule z4({4}), z2({2});
  CHECK(cokernel(ModuleHom(z4, z4, Mat::from_rows({{2}}))).module.invariant_factors() ==
        std::vector<i64>{2});
  CHECK(cokernel(ModuleHom(z4, z2, Mat::from_rows({{1}}))).module.is_zero());
}

TEST_CASE("hom modules") {
  CHECK(hom_module(FinAbModule({4}), FinAbModule({6})).module.invariant_factors() ==
        std::vector<i64>{2});
  CHECK(hom_module(FinAbModule{}, FinAbModule({5})).module.is_zero());
  CHECK(hom_module(FinAbModule({3}), FinAbModule({3})).module.invariant_factors() ==
        std::vector<i64>{3});

  SECTION("elements biject with additive maps") {
    FinAbModule m({2, 4}), n({8});
    auto hs = hom_module(m, n);
    // every element gives a well-defined hom; to_hom is additive and injective
    auto elts = hs.module.elements();
    for (const auto& a : elts) {
      auto ha = hs.to_hom(a);
      CHECK(ha.well_defined());
      CHECK(hs.from_hom(ha) == a);
      for (const auto& b : elts) {
        auto sum = hs.to_hom(hs.module.add(a, b));
        CHECK(sum.eq(hom_add(hs.to_hom(a), hs.to_hom(b))));
      }
    }
    // counting: |Hom(Z/2 + Z/4, Z/8)| = 2 * 4
    CHECK(hs.module.order() == 8);
  }
}

TEST_CASE("duals and transposes") {
  SECTION("self-duality of invariants") {
    FinAbModule m({2, 4});
    CHECK(dual_module(m).invariant_factors() == m.invariant_factors());
    CHECK(dual_module(FinAbModule{}).is_zero());
  }
  SECTION("evaluation pairing is perfect on Z/9") {
    FinAbModule m({9});
    auto elts = m.elements();
    for (const auto& phi : elts) {
      if (m.is_zero_elt(phi)) continue;
      bool hits = false;
      for (const auto& x : elts) hits = hits || dual_eval(m, phi, x) != 0;
      CHECK(hits);
    }
  }
  SECTION("transpose reference cases") {
    FinAbModule z4({4});
    auto h = ModuleHom(z4, z4, Mat::from_rows({{2}}));
    CHECK(transpose_hom(ModuleHom::identity(z4)).eq(ModuleHom::identity(z4)));
    CHECK(transpose_hom(h).eq(h));
  }
  SECTION("double transpose and finite duality") {
    Rng rng(99);
    std::vector<FinAbModule> pool = {FinAbModule({9, 3}), FinAbModule({4, 2}),
                                     FinAbModule({6}), FinAbModule({27})};
    for (int trial = 0; trial < 40; ++trial) {
      const auto& src = pool[rng.below((i64)pool.size())];
      const auto& tgt = pool[rng.below((i64)pool.size())];
      auto h = random_hom(rng, src, tgt);
      auto ht = transpose_hom(h);
      CHECK(ht.well_defined());
      CHECK(transpose_hom(ht).eq(h));
      // adjunction of the evaluation pairing
      for (const auto& x : src.elements())
        for (const auto& phi : dual_module(tgt).elements()) {
          i64 lhs = dual_eval(tgt, phi, h.apply(x));
          i64 rhs = dual_eval(src, ht.apply(phi), x);
          i64 es = src.exponent(), et = tgt.exponent(), e = lcm_i64(es, et);
          CHECK(umod(lhs * (e / et), e) == umod(rhs * (e / es), e));
        }
      CHECK(kernel(ht).module.order() == cokernel(h).module.order());
      // contravariant functoriality on a composable pair
      auto g = random_hom(rng, tgt, pool[rng.below((i64)pool.size())]);
      CHECK(transpose_hom(compose(g, h)).eq(compose(transpose_hom(h), transpose_hom(g))));
    }
  }
}

TEST_CASE("tensor products") {
  CHECK(tensor_module(FinAbModule({2}), FinAbModule({3})).module.is_zero());
  CHECK(tensor_module(FinAbModule({4}), FinAbModule({6})).module.invariant_factors() ==
        std::vector<i64>{2});
  SECTION("swap is an involution on Z/3 (x) Z/9") {
    auto mn = tensor_module(FinAbModule({3}), FinAbModule({9}));
    auto nm = tensor_module(FinAbModule({9}), FinAbModule({3}));
    auto sw = tensor_swap(mn, nm);
    auto ws = tensor_swap(nm, mn);
    CHECK(compose(ws, sw).eq(ModuleHom::identity(mn.module)));
    // swap matches on pure tensors
    FinAbModule m({3}), n({9});
    for (const auto& x : m.elements())
      for (const auto& y : n.elements())
        CHECK(nm.module.eq(sw.apply(mn.pure(x, y)), nm.pure(y, x)));
  }
  SECTION("bilinearity of the pure-tensor map") {
    FinAbModule m({4, 2}), n({6});
    auto t = tensor_module(m, n);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      Vec x1 = m.reduce({(i64)rng.below(8), (i64)rng.below(8)});
      Vec x2 = m.reduce({(i64)rng.below(8), (i64)rng.below(8)});
      Vec y = n.reduce({(i64)rng.below(12)});
      CHECK(t.module.eq(t.pure(m.add(x1, x2), y),
                        t.module.add(t.pure(x1, y), t.pure(x2, y))));
    }
  }
}

TEST_CASE("modular solver agrees with enumeration") {
  Rng rng(31337);
  std::vector<FinAbModule> pool = {FinAbModule({9, 3}), FinAbModule({4}),
                                   FinAbModule({8, 2}), FinAbModule({6}),
                                   FinAbModule({5, 5})};
  for (int trial = 0; trial < 60; ++trial) {
    const auto& src = pool[rng.below((i64)pool.size())];
    const auto& tgt = pool[rng.below((i64)pool.size())];
    auto h = random_hom(rng, src, tgt);
    Vec b(tgt.rank());
    for (auto& v : b) v = rng.below(12);
    b = tgt.reduce(b);
    auto sol = solve_hom_one(h, b);
    bool exists = false;
    for (const auto& x : src.elements())
      exists = exists || tgt.eq(h.apply(x), b);
    CHECK(sol.has_value() == exists);
    if (sol) CHECK(tgt.eq(h.apply(*sol), b));
  }
}

TEST_CASE("kernel lattice covers all solutions") {
  Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    FinAbModule src({6, 4}), tgt({12});
    auto h = random_hom(rng, src, tgt);
    auto k = kernel(h);
    // membership in the lattice is exactly vanishing under h
    for (const auto& x : src.elements()) {
      bool in_kernel = tgt.is_zero_elt(h.apply(x));
      bool in_lattice = true;
      try {
        solve_lower_triangular(k.lattice, x);
      } catch (const error&) {
        in_lattice = false;
      }
      CHECK(in_kernel == in_lattice);
    }
  }
}
