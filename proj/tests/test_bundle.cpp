#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dirpoly/bundle.hpp"

using namespace dirpoly;

namespace {

std::vector<Bundle> bundle_grid(int max_total, int max_base) {
  std::vector<Bundle> out;
  for (int t = 0; t <= max_base; ++t)
    for (int s = 0; s <= max_total; ++s)
      for (auto& proj : enumerate_maps(FinSet{s}, FinSet{t}))
        out.push_back(Bundle{proj});
  return out;
}

Bundle bang_bundle(int x) { return Bundle{bang(FinSet{x})}; }

Dir random_dir(std::mt19937_64& rng, int max_terms, int max_base) {
  std::uniform_int_distribution<int> terms(0, max_terms), base(0, max_base);
  std::vector<int> bs(terms(rng));
  for (int& b : bs) b = base(rng);
  return Dir(std::move(bs));
}

}  // namespace

TEST_CASE("fibers and canonical form") {
  Bundle b{FinFunction{FinSet{5}, FinSet{3}, {2, 0, 2, 1, 0}}};
  auto fib = fibers(b);
  CHECK(fib[0] == std::vector<int>{1, 4});
  CHECK(fib[2] == std::vector<int>{0, 2});
  CHECK_FALSE(is_canonical(b));

  auto canon = canonicalize(b);
  CHECK(is_canonical(canon.canonical));
  CHECK(is_bijective(canon.base_perm));
  CHECK(is_bijective(canon.total_perm));
  // The permutations carry the original projection onto the canonical one.
  CHECK(compose(canon.canonical.proj, canon.total_perm) ==
        compose(canon.base_perm, b.proj));
  CHECK(dir_of_bundle(canon.canonical) == dir_of_bundle(b));

  Bundle already{FinFunction{FinSet{8}, FinSet{6}, {0, 0, 0, 1, 1, 1, 2, 2}}};
  CHECK(is_canonical(already));
  CHECK(canonicalize(already).canonical == already);
  CHECK(canonicalize(already).total_perm == identity(FinSet{8}));
}

TEST_CASE("the transform swaps pictures and round-trips") {
  Poly p({3, 3, 2, 0, 0, 0});
  CHECK(dirichlet_transform(p) == Dir({3, 3, 2, 0, 0, 0}));
  CHECK(dirichlet_transform(Poly::y()) == Dir::representable(1));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Dir d = random_dir(rng, 6, 5);
    CHECK(dirichlet_transform(inverse_transform(d)) == d);
    Poly q = inverse_transform(d);
    CHECK(inverse_transform(dirichlet_transform(q)) == q);
  }
}

TEST_CASE("bundle <-> series correspondence on the running example") {
  Bundle b{FinFunction{FinSet{8}, FinSet{6}, {0, 0, 0, 1, 1, 1, 2, 2}}};
  CHECK(dir_of_bundle(b) == Dir({3, 3, 2, 0, 0, 0}));
  CHECK(poly_of_bundle(b) == Poly({3, 3, 2, 0, 0, 0}));
  CHECK(bundle_of_dir(Dir({3, 3, 2, 0, 0, 0})) == b);
  CHECK(bundle_of_poly(Poly({3, 3, 2, 0, 0, 0})) == b);

  // X! corresponds to X^y and y^X.
  for (int x = 0; x <= 4; ++x) {
    CHECK(dir_of_bundle(bang_bundle(x)) == Dir::representable(x));
    CHECK(poly_of_bundle(bang_bundle(x)) == Poly::representable(x));
  }

  Bundle empty{FinFunction{FinSet{0}, FinSet{0}, {}}};
  CHECK(poly_of_bundle(empty) == Poly{});
  CHECK(dir_of_bundle(empty) == Dir{});
  CHECK(bundle_of_dir(Dir{}) == empty);

  // pi computed through evaluation agrees with the direct block layout.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Dir d = random_dir(rng, 6, 5);
    CHECK(pi(d) == bundle_of_dir(d));
    CHECK(is_canonical(pi(d)));
    CHECK(dir_of_bundle(pi(d)) == d);
  }
}

TEST_CASE("composition in Bun and Cont") {
  auto grid = bundle_grid(2, 2);
  for (auto& a : grid) {
    CHECK(is_valid(identity_bun(a)));
    CHECK(is_valid(identity_cont(a)));
  }

  // Units and exhaustive associativity for Cont on bundles with levels <= 2.
  std::vector<Bundle> small{
      Bundle{FinFunction{FinSet{2}, FinSet{1}, {0, 0}}},
      Bundle{FinFunction{FinSet{2}, FinSet{2}, {0, 0}}},
      Bundle{FinFunction{FinSet{1}, FinSet{2}, {1}}},
      Bundle{FinFunction{FinSet{0}, FinSet{1}, {}}},
  };
  for (auto& a : small)
    for (auto& b : small) {
      for (auto& m : enumerate_cont(a, b)) {
        CHECK(is_valid(m));
        CHECK(compose(m, identity_cont(a)) == m);
        CHECK(compose(identity_cont(b), m) == m);
      }
      for (auto& m : enumerate_bun(a, b)) {
        CHECK(is_valid(m));
        CHECK(compose(m, identity_bun(a)) == m);
        CHECK(compose(identity_bun(b), m) == m);
      }
      for (auto& c : small) {
        for (auto& m : enumerate_cont(a, b))
          for (auto& n : enumerate_cont(b, c)) {
            auto nm = compose(n, m);
            CHECK(is_valid(nm));
            for (auto& d : small)
              for (auto& o : enumerate_cont(c, d))
                CHECK(compose(o, nm) == compose(compose(o, n), m));
          }
      }
    }
}

TEST_CASE("hom-set enumeration sizes and ranks") {
  auto grid = bundle_grid(2, 2);
  for (auto& a : grid)
    for (auto& b : grid) {
      BunHomSet bh(a, b);
      CHECK(bh.size() == bun_hom_count(a, b));
      auto bs = enumerate_bun(a, b);
      CHECK(Nat(bs.size()) == bh.size());
      std::set<std::size_t> seen;
      for (auto& m : bs) {
        CHECK(is_valid(m));
        seen.insert(bh.index_of(m));
      }
      CHECK(seen.size() == bs.size());

      ContHomSet ch(a, b);
      CHECK(ch.size() == cont_hom_count(a, b));
      auto cs = enumerate_cont(a, b);
      CHECK(Nat(cs.size()) == ch.size());
      std::set<std::size_t> seen2;
      for (auto& m : cs) {
        CHECK(is_valid(m));
        seen2.insert(ch.index_of(m));
      }
      CHECK(seen2.size() == cs.size());
    }
}

TEST_CASE("maps out of a point-bundle compute evaluations") {
  Bundle running{FinFunction{FinSet{8}, FinSet{6}, {0, 0, 0, 1, 1, 1, 2, 2}}};
  Dir d = dir_of_bundle(running);
  Poly p = poly_of_bundle(running);
  for (int x = 0; x <= 3; ++x) {
    CHECK(bun_hom_count(bang_bundle(x), running) == eval_count(d, FinSet{x}));
    CHECK(cont_hom_count(bang_bundle(x), running) == eval_count(p, FinSet{x}));
  }
  // Spelled out for X = 2: 3^2+3^2+2^2 = 22 on the Dirichlet side and
  // 2^3+2^3+2^2+1+1+1 = 23 on the polynomial side.
  CHECK(bun_hom_count(bang_bundle(2), running) == 22);
  CHECK(cont_hom_count(bang_bundle(2), running) == 23);
}

TEST_CASE("cartesian bundle morphisms match the pullback-square oracle") {
  auto grid = bundle_grid(2, 2);
  for (auto& a : grid)
    for (auto& b : grid)
      for (auto& m : enumerate_bun(a, b))
        CHECK(is_cartesian(m) ==
              is_pullback_square(m.total_map, a.proj, b.proj, m.base_map));

  // Fiber-preserving bijection over an iso base.
  Bundle two_each{FinFunction{FinSet{4}, FinSet{2}, {0, 0, 1, 1}}};
  BunMorphism swap{two_each, two_each,
                   FinFunction{FinSet{4}, FinSet{4}, {2, 3, 0, 1}},
                   FinFunction{FinSet{2}, FinSet{2}, {1, 0}}};
  REQUIRE(is_valid(swap));
  CHECK(is_cartesian(swap));

  // Collapsing within a fiber is not cartesian.
  BunMorphism collapse{two_each, two_each,
                       FinFunction{FinSet{4}, FinSet{4}, {0, 0, 2, 3}},
                       identity(FinSet{2})};
  REQUIRE(is_valid(collapse));
  CHECK_FALSE(is_cartesian(collapse));
  CHECK(is_cartesian(identity_bun(two_each)));
}

TEST_CASE("vertical/cartesian factorization") {
  auto grid = bundle_grid(3, 2);
  for (auto& a : grid)
    for (auto& b : grid)
      for (auto& m : enumerate_bun(a, b)) {
        auto fact = factorize(m);
        CHECK(is_valid(fact.vertical));
        CHECK(is_valid(fact.cartesian));
        CHECK(fact.vertical.base_map == identity(a.base()));
        CHECK(is_cartesian(fact.cartesian));
        CHECK(compose(fact.cartesian, fact.vertical) == m);
      }

  // A cartesian morphism factors with an invertible vertical part.
  Bundle two_each{FinFunction{FinSet{4}, FinSet{2}, {0, 0, 1, 1}}};
  BunMorphism swap{two_each, two_each,
                   FinFunction{FinSet{4}, FinSet{4}, {2, 3, 0, 1}},
                   FinFunction{FinSet{2}, FinSet{2}, {1, 0}}};
  auto fact = factorize(swap);
  CHECK(is_bijective(fact.vertical.total_map));

  // A vertical morphism factors as (itself, identity-like cartesian part).
  BunMorphism vertical{two_each, two_each,
                       FinFunction{FinSet{4}, FinSet{4}, {0, 0, 2, 3}},
                       identity(FinSet{2})};
  auto fact2 = factorize(vertical);
  CHECK(is_bijective(fact2.cartesian.total_map));
  CHECK(fact2.cartesian.base_map == identity(FinSet{2}));

  // Uniqueness of the comparison with any other such factorization, on a
  // small instance.
  Bundle src{FinFunction{FinSet{2}, FinSet{1}, {0, 0}}};
  Bundle tgt{FinFunction{FinSet{2}, FinSet{1}, {0, 0}}};
  for (auto& m : enumerate_bun(src, tgt)) {
    auto f = factorize(m);
    for (auto& mid : bundle_grid(3, 1)) {
      if (mid.base() != src.base()) continue;
      for (auto& v : enumerate_bun(src, mid)) {
        if (v.base_map != identity(src.base())) continue;
        for (auto& c : enumerate_bun(mid, tgt)) {
          if (!is_cartesian(c)) continue;
          if (compose(c, v) != m) continue;
          int comparisons = 0;
          for (auto& w : enumerate_bun(mid, f.middle)) {
            if (!is_cartesian(w) || w.base_map != identity(src.base()))
              continue;
            if (compose(w, v) == f.vertical &&
                compose(f.cartesian, w) == c)
              ++comparisons;
          }
          CHECK(comparisons == 1);
        }
      }
    }
  }
}

TEST_CASE("functor to Dirichlet polynomials: identity, composition, homs") {
  auto grid = bundle_grid(2, 2);
  for (auto& a : grid) {
    CHECK(functor_D(identity_bun(a)) == identity_morphism(dir_of_bundle(a)));
    CHECK(functor_P(identity_cont(a)) ==
          identity_morphism(poly_of_bundle(a)));
  }

  for (auto& a : grid)
    for (auto& b : grid) {
      CHECK(bun_hom_count(a, b) ==
            hom_count(dir_of_bundle(a), dir_of_bundle(b)));
      CHECK(cont_hom_count(a, b) ==
            hom_count(poly_of_bundle(a), poly_of_bundle(b)));

      // Faithful and full: distinct images, exact count.
      std::set<std::size_t> dir_images, poly_images;
      DirHomSet dh(dir_of_bundle(a), dir_of_bundle(b));
      for (auto& m : enumerate_bun(a, b)) {
        auto n = functor_D(m);
        CHECK(is_valid(n));
        dir_images.insert(dh.index_of(n));
      }
      CHECK(Nat(dir_images.size()) == dh.size());

      PolyHomSet ph(poly_of_bundle(a), poly_of_bundle(b));
      for (auto& m : enumerate_cont(a, b)) {
        auto n = functor_P(m);
        CHECK(is_valid(n));
        poly_images.insert(ph.index_of(n));
      }
      CHECK(Nat(poly_images.size()) == ph.size());
    }

  // Composition preservation on a sampled triple.
  Bundle x{FinFunction{FinSet{2}, FinSet{2}, {0, 1}}};
  Bundle y{FinFunction{FinSet{2}, FinSet{1}, {0, 0}}};
  Bundle z{FinFunction{FinSet{2}, FinSet{2}, {0, 0}}};
  for (auto& m : enumerate_bun(x, y))
    for (auto& n : enumerate_bun(y, z))
      CHECK(functor_D(compose(n, m)) ==
            compose(functor_D(n), functor_D(m)));
  for (auto& m : enumerate_cont(x, y))
    for (auto& n : enumerate_cont(y, z))
      CHECK(functor_P(compose(n, m)) ==
            compose(functor_P(n), functor_P(m)));
}

TEST_CASE("inverse functors on canonical bundles") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    Dir d = random_dir(rng, 4, 3);
    Dir e = random_dir(rng, 4, 3);
    if (hom_count(d, e) > 200) continue;
    for (auto& n : hom_enumerate(d, e)) {
      auto m = functor_D_inverse(n);
      CHECK(is_valid(m));
      CHECK(functor_D(m) == n);
      // The checked variant accepts the canonical bundles...
      CHECK(functor_D_inverse(n, bundle_of_dir(d), bundle_of_dir(e)) == m);
    }
  }
  // ...and rejects non-canonical ones.
  Dir d({2, 1});
  auto n = identity_morphism(d);
  Bundle scrambled{FinFunction{FinSet{3}, FinSet{2}, {1, 0, 0}}};
  CHECK_THROWS_AS(functor_D_inverse(n, scrambled, bundle_of_dir(d)),
                  non_canonical_bundle_error);

  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> terms(0, 4), exp(0, 3);
    std::vector<int> es(terms(rng));
    for (int& v : es) v = exp(rng);
    Poly p(std::move(es));
    std::vector<int> es2(terms(rng));
    for (int& v : es2) v = exp(rng);
    Poly q(std::move(es2));
    if (hom_count(p, q) > 200) continue;
    for (auto& np : hom_enumerate(p, q)) {
      auto m = functor_P_inverse(np);
      CHECK(is_valid(m));
      CHECK(functor_P(m) == np);
    }
  }
  Poly p({2, 1});
  CHECK_THROWS_AS(
      functor_P_inverse(identity_morphism(p), scrambled, bundle_of_poly(p)),
      non_canonical_bundle_error);
}

TEST_CASE("round-trip through the functors on arbitrary squares") {
  // For a non-canonical bundle the functor conjugates by the
  // canonicalization; applying it then the inverse lands on the canonical
  // representative of the same morphism.
  Bundle a{FinFunction{FinSet{3}, FinSet{2}, {1, 0, 1}}};
  Bundle b{FinFunction{FinSet{2}, FinSet{2}, {0, 1}}};
  auto ca = canonicalize(a);
  auto cb = canonicalize(b);
  for (auto& m : enumerate_bun(a, b)) {
    auto back = functor_D_inverse(functor_D(m));
    BunMorphism conjugated{ca.canonical, cb.canonical,
                           compose(cb.total_perm,
                                   compose(m.total_map,
                                           inverse(ca.total_perm))),
                           compose(cb.base_perm,
                                   compose(m.base_map,
                                           inverse(ca.base_perm)))};
    CHECK(back == conjugated);
  }
}

TEST_CASE("cartesian passage between all four pictures") {
  Bundle two_term{FinFunction{FinSet{3}, FinSet{2}, {0, 0, 1}}};
  Bundle one_term{FinFunction{FinSet{2}, FinSet{1}, {0, 0}}};

  // Over f : 1 -> 2 picking the 2-element fiber.
  BunMorphism m{one_term, two_term,
                FinFunction{FinSet{2}, FinSet{3}, {0, 1}},
                FinFunction{FinSet{1}, FinSet{2}, {0}}};
  REQUIRE(is_valid(m));
  REQUIRE(is_cartesian(m));

  auto cont = to_cont_cart(m);
  CHECK(is_valid(cont));
  CHECK(is_cartesian(cont));
  CHECK(cont.base_map == m.base_map);
  CHECK(to_bun_cart(cont) == m);

  auto dirm = functor_D(m);
  CHECK(is_cartesian(dirm));
  auto polym = to_poly_cart(dirm);
  CHECK(is_cartesian(polym));
  CHECK(polym.on_positions == dirm.on_terms);
  CHECK(to_dir_cart(polym) == dirm);

  CHECK(to_dir_cart(identity_morphism(Poly({2, 1}))) ==
        identity_morphism(Dir({2, 1})));

  // Counting cartesian morphisms agrees across the four categories.
  auto grid = bundle_grid(2, 2);
  for (auto& a : grid)
    for (auto& b : grid) {
      int bun = 0, cont_count = 0, dir_count = 0, poly_count = 0;
      for (auto& mm : enumerate_bun(a, b))
        if (is_cartesian(mm)) ++bun;
      for (auto& mm : enumerate_cont(a, b))
        if (is_cartesian(mm)) ++cont_count;
      for (auto& mm : hom_enumerate(dir_of_bundle(a), dir_of_bundle(b)))
        if (is_cartesian(mm)) ++dir_count;
      for (auto& mm : hom_enumerate(poly_of_bundle(a), poly_of_bundle(b)))
        if (is_cartesian(mm)) ++poly_count;
      CHECK(bun == cont_count);
      CHECK(bun == dir_count);
      CHECK(bun == poly_count);
    }

  // Non-cartesian inputs are rejected.
  BunMorphism bad{one_term, two_term,
                  FinFunction{FinSet{2}, FinSet{3}, {0, 0}},
                  FinFunction{FinSet{1}, FinSet{2}, {0}}};
  REQUIRE(is_valid(bad));
  CHECK_THROWS_AS(to_cont_cart(bad), not_cartesian_error);
}

TEST_CASE("transform is strong monoidal and sums are pointwise") {
  std::vector<Poly> polys;
  std::vector<std::vector<int>> frontier{{}};
  for (int t = 0; t < 3; ++t) {
    std::vector<std::vector<int>> next;
    for (auto& exps : frontier) {
      int hi = exps.empty() ? 3 : exps.back();
      for (int e = hi; e >= 0; --e) {
        auto extended = exps;
        extended.push_back(e);
        polys.emplace_back(extended);
        next.push_back(std::move(extended));
      }
    }
    frontier = std::move(next);
  }
  polys.push_back(Poly{});
  for (auto& p : polys)
    for (auto& q : polys)
      CHECK(dirichlet_transform(tensor(p, q)) ==
            multiply(dirichlet_transform(p), dirichlet_transform(q)));

  // Pointwise sums of bundles map to sums on both sides.
  auto grid = bundle_grid(2, 2);
  for (auto& a : grid)
    for (auto& b : grid) {
      Bundle sum = coproduct_bundle(a, b);
      CHECK(poly_of_bundle(sum) == add(poly_of_bundle(a), poly_of_bundle(b)));
      CHECK(dir_of_bundle(sum) == add(dir_of_bundle(a), dir_of_bundle(b)));
    }
}
