#include <doctest.h>

#include "qntt/poly.hpp"
#include "test_support.hpp"

using namespace qntt;
using namespace qntt::test;

TEST_CASE("schoolbook_mul fixed values") {
  CHECK(schoolbook_mul({1, 1}, {1, 1}, 13) == Poly{1, 2, 1});
  CHECK(schoolbook_mul({3, 5}, {7, 11}, 13) == Poly{8, 3, 3});
  Poly g{4, 0, 7, 1};
  CHECK(schoolbook_mul(g, {1}, 13) == g);
  CHECK(schoolbook_mul(g, {}, 13).empty());
}

TEST_CASE("reduce_mod_xn_minus_a") {
  // x^2 = -1: 1 + 2x + x^2 -> 2x
  CHECK(reduce_mod_xn_minus_a({1, 2, 1}, 2, 12, 13) == Poly{0, 2});
  // x^4 mod x^4 - 3
  CHECK(reduce_mod_xn_minus_a({0, 0, 0, 0, 1}, 4, 3, 13) == Poly{3, 0, 0, 0});
  // x^6 = 3 x^2
  CHECK(reduce_mod_xn_minus_a({0, 0, 0, 0, 0, 0, 1}, 4, 3, 13) ==
        Poly{0, 0, 3, 0});
  // double wraparound: x^8 mod x^4 - 3 = 9
  CHECK(reduce_mod_xn_minus_a({0, 0, 0, 0, 0, 0, 0, 0, 1}, 4, 3, 13) ==
        Poly{9, 0, 0, 0});

  SUBCASE("idempotent and congruence-preserving at roots") {
    Rng rng(11);
    const u64 m = 13;
    // alpha = 2 is a 4th root of 3 mod 13
    for (int it = 0; it < 200; ++it) {
      Poly g = random_poly(rng, 1 + rng.below(12), m);
      Poly r = reduce_mod_xn_minus_a(g, 4, 3, m);
      CHECK(reduce_mod_xn_minus_a(r, 4, 3, m) == r);
      CHECK(eval_poly(r, 2, m) == eval_poly(g, 2, m));
    }
  }
}

TEST_CASE("schoolbook_mul_mod") {
  CHECK(schoolbook_mul_mod({1, 1}, {1, 1}, 2, 12, 13) == Poly{0, 2});
  Poly g{5, 9, 0, 2};
  CHECK(schoolbook_mul_mod(g, {1, 0, 0, 0}, 4, 1, 13) == g);

  SUBCASE("equals the direct convolution sum") {
    Rng rng(3);
    for (int it = 0; it < 300; ++it) {
      Poly g = random_poly(rng, 4, 65);
      Poly h = random_poly(rng, 4, 65);
      CHECK(schoolbook_mul_mod(g, h, 4, 1, 65) ==
            convolution_oracle(g, h, 4, 1, 65));
      CHECK(schoolbook_mul_mod(g, h, 4, 64, 65) ==
            convolution_oracle(g, h, 4, 64, 65));
    }
  }
}

TEST_CASE("karatsuba equals schoolbook") {
  CHECK(karatsuba({5}, {7}, 13) == Poly{9});
  CHECK(karatsuba({0, 0}, {3, 1}, 13) == Poly{0, 0, 0});

  Rng rng(5);
  for (u64 m : {13ull, 65ull, 1649ull}) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 8u, 16u, 31u, 64u, 130u, 256u}) {
      for (int it = 0; it < 20; ++it) {
        Poly g = random_poly(rng, n, m);
        Poly h = random_poly(rng, 1 + rng.below(n), m); // ragged lengths
        CHECK(karatsuba(g, h, m) == schoolbook_mul(g, h, m));
      }
    }
  }
}

TEST_CASE("dual_karatsuba_mod") {
  CHECK(dual_karatsuba_mod({1, 1}, {1, 1}, 2, +1, 13) == Poly{0, 2});
  CHECK(dual_karatsuba_mod({4}, {5}, 1, -1, 13) == Poly{7});
  CHECK(dual_karatsuba_mod({4}, {5}, 1, +1, 13) == Poly{7});

  SUBCASE("equals schoolbook_mul_mod, both signs") {
    Rng rng(9);
    for (u64 m : {13ull, 65ull, 125ull}) {
      for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 32u}) {
        for (int it = 0; it < 30; ++it) {
          Poly g = random_poly(rng, n, m);
          Poly h = random_poly(rng, n, m);
          CHECK(dual_karatsuba_mod(g, h, n, +1, m) ==
                schoolbook_mul_mod(g, h, n, m - 1, m));
          CHECK(dual_karatsuba_mod(g, h, n, -1, m) ==
                schoolbook_mul_mod(g, h, n, 1, m));
        }
      }
    }
  }

  SUBCASE("equals reduce after karatsuba") {
    Rng rng(17);
    for (std::size_t n : {2u, 8u, 64u}) {
      for (int it = 0; it < 25; ++it) {
        Poly g = random_poly(rng, n, 1649);
        Poly h = random_poly(rng, n, 1649);
        CHECK(dual_karatsuba_mod(g, h, n, +1, 1649) ==
              reduce_mod_xn_minus_a(karatsuba(g, h, 1649), n, 1648, 1649));
      }
    }
  }
}

TEST_CASE("quotient ring axioms under schoolbook_mul_mod") {
  Rng rng(23);
  struct Params { u64 m; std::size_t n; Residue a; };
  for (Params p : {Params{13, 4, 1}, Params{65, 4, 64}, Params{125, 8, 3}}) {
    for (int it = 0; it < 64; ++it) {
      Poly f = random_poly(rng, p.n, p.m);
      Poly g = random_poly(rng, p.n, p.m);
      Poly h = random_poly(rng, p.n, p.m);
      CHECK(schoolbook_mul_mod(f, g, p.n, p.a, p.m) ==
            schoolbook_mul_mod(g, f, p.n, p.a, p.m));
      auto fg_h = schoolbook_mul_mod(schoolbook_mul_mod(f, g, p.n, p.a, p.m),
                                     h, p.n, p.a, p.m);
      auto f_gh = schoolbook_mul_mod(f, schoolbook_mul_mod(g, h, p.n, p.a, p.m),
                                     p.n, p.a, p.m);
      CHECK(fg_h == f_gh);
    }
  }
}
