#include <doctest.h>

#include <random>

#include "clab/filtered_sums.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

const TriangleSet& tables() {
  static const TriangleSet t(60);
  return t;
}

std::int64_t canon(std::int64_t r, std::int64_t d) { return ((r % d) + d) % d; }

// Naive reference sums: loop over all k, test membership, apply the weight.
oracle::Int naive_fleck(std::int64_t n, std::int64_t p, std::int64_t alpha, std::int64_t r, std::int64_t l,
                        bool floor_variant, std::int64_t beta) {
  const std::int64_t pa = int_pow(p, alpha);
  const std::int64_t d = floor_variant ? int_pow(p, beta) : pa;
  const std::int64_t rc = canon(r, d);
  return oracle::filtered(0, n, d, rc, [&](std::int64_t k) -> oracle::Int {
    const std::int64_t q = floor_variant ? floor_div(k - rc, pa) : (k - rc) / pa;
    oracle::Int t = oracle::binom(n, k) * oracle::binom(q, l);
    return (k % 2 == 0) ? t : oracle::Int(-t);
  });
}

oracle::Int naive_binom_power(std::int64_t n, std::int64_t d, std::int64_t r, const oracle::Int& a) {
  return oracle::filtered(0, n, d, r, [&](std::int64_t k) -> oracle::Int { return oracle::binom(n, k) * oracle::ipow(-a, k); });
}

oracle::Int naive_eulerian_wan(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t l) {
  const std::int64_t rc = canon(r, d);
  return oracle::filtered(0, n - 1, d, rc, [&](std::int64_t k) -> oracle::Int {
    return oracle::Int(tables().eulerian(n, k) * oracle::binom((k - rc) / d, l));
  });
}

oracle::Int naive_eulerian_power(std::int64_t n, std::int64_t d, std::int64_t r, const oracle::Int& a) {
  return oracle::filtered(0, n - 1, d, r, [&](std::int64_t k) -> oracle::Int { return oracle::Int(tables().eulerian(n, k) * oracle::ipow(a, k)); });
}

oracle::Int naive_product(std::int64_t n, std::int64_t m, std::int64_t d, std::int64_t r, const oracle::Int& a) {
  return oracle::filtered(0, n, d, r, [&](std::int64_t k) -> oracle::Int {
    return oracle::Int(tables().stirling1(n, k) * tables().stirling2(k, m) * oracle::ipow(a, k));
  });
}

oracle::Int naive_poly(std::int64_t n, const IntPolynomial& f, std::int64_t d, std::int64_t r, const oracle::Int& a) {
  return oracle::filtered(0, n, d, r, [&](std::int64_t k) -> oracle::Int {
    oracle::Int fk = 0;
    const auto& c = f.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) fk += c[i] * oracle::ipow(k, static_cast<std::int64_t>(i));
    return oracle::Int(tables().stirling1(n, k) * fk * oracle::ipow(a, k));
  });
}

}  // namespace

TEST_CASE("ResidueClass canonicalizes") {
  const ResidueClass c(5, -3);
  CHECK(c.residue() == 2);
  CHECK(c.contains(7));
  CHECK(c.contains(-3));
  CHECK_FALSE(c.contains(3));
  CHECK(ResidueClass(4, 9) == ResidueClass(4, 1));
  CHECK(ResidueClass(1, 17).residue() == 0);
  CHECK_THROWS_AS(ResidueClass(0, 1), ParameterError);
}

TEST_CASE("fleck_sum examples") {
  CHECK(naive_fleck(3, 2, 1, 0, 0, false, 0) == 4);
  CHECK(naive_fleck(5, 2, 1, 0, 1, false, 0) == 20);
  CHECK(fleck_sum(3, 2, 1, ResidueClass(2, 0), 0) == 4);
  CHECK(fleck_sum(5, 2, 1, ResidueClass(2, 0), 1) == 20);
  CHECK(fleck_sum(1, 3, 1, ResidueClass(3, 2), 0) == 0);
}

TEST_CASE("fleck_sum parameter checks") {
  CHECK_THROWS_AS(fleck_sum(5, 2, 2, ResidueClass(2, 0), 0), ParameterError);
  CHECK_THROWS_AS(fleck_sum(5, 2, 1, ResidueClass(4, 0), 0, FleckVariant::Floor, 1), ParameterError);
  CHECK_THROWS_AS(fleck_sum(5, 2, 1, ResidueClass(4, 0), 0, FleckVariant::Floor, 2), ParameterError);
  CHECK_THROWS_AS(fleck_sum(5, 4, 1, ResidueClass(4, 0), 0), ParameterError);
  // beta = 0: modulus 1, every k.
  CHECK(fleck_sum(4, 2, 1, ResidueClass(1, 0), 0, FleckVariant::Floor, 0) == 0);
  CHECK(fleck_sum(4, 2, 1, ResidueClass(1, 0), 1, FleckVariant::Floor, 0) ==
        naive_fleck(4, 2, 1, 0, 1, true, 0));
}

TEST_CASE("binom_power_sum examples") {
  CHECK(binom_power_sum(3, 2, 1, ResidueClass(2, 0), 1) == fleck_sum(3, 2, 1, ResidueClass(2, 0), 0));
  CHECK(binom_power_sum(3, 2, 1, ResidueClass(2, 0), 1) == 4);
  CHECK(naive_binom_power(2, 2, 1, 3) == -6);
  CHECK(binom_power_sum(2, 2, 1, ResidueClass(2, 1), 3) == -6);
  CHECK(binom_power_sum(0, 5, 1, ResidueClass(5, 0), 5) == 1);
}

TEST_CASE("eulerian_wan_sum examples") {
  CHECK(naive_eulerian_wan(3, 2, 0, 0) == 2);
  CHECK(eulerian_wan_sum(tables(), 3, 2, 1, ResidueClass(2, 0), 0) == 2);
  CHECK(eulerian_wan_sum(tables(), 3, 2, 1, ResidueClass(2, 0), 1) == 1);
  CHECK(eulerian_wan_sum(tables(), 2, 5, 1, ResidueClass(5, 3), 0) == 0);
  CHECK(eulerian_wan_sum(tables(), 4, 5, 1, ResidueClass(5, 4), 2) == 0);
}

TEST_CASE("eulerian_power_sum examples") {
  CHECK(naive_eulerian_power(4, 2, 1, 3) == 60);
  CHECK(eulerian_power_sum(tables(), 4, 2, 1, ResidueClass(2, 1), 3) == 60);
  for (std::int64_t n = 1; n <= 10; ++n) {
    CHECK(eulerian_power_sum(tables(), n, 2, 1, ResidueClass(2, 0), 0) == 1);
    for (std::int64_t r = 0; r < 16; ++r) {
      CHECK(eulerian_power_sum(tables(), n, 2, 4, ResidueClass(16, r), 1) == tables().eulerian(n, r));
    }
  }
}

TEST_CASE("stirling_product_sum examples") {
  CHECK(naive_product(4, 2, 2, 0, 1) == 18);
  CHECK(stirling_product_sum(tables(), 4, 2, ResidueClass(2, 0), 1) == 18);
  CHECK(stirling_product_sum(tables(), 4, 1, ResidueClass(2, 0), 1) == 12);
  CHECK(stirling_product_sum(tables(), 4, 5, ResidueClass(1, 0), 7) == 0);
  CHECK(stirling_product_sum(tables(), 4, 50, ResidueClass(1, 0), 7) == 0);
}

TEST_CASE("stirling_poly_sum examples") {
  CHECK(naive_poly(3, IntPolynomial{0, 1}, 2, 1, 1) == 5);
  CHECK(stirling_poly_sum(tables(), 3, IntPolynomial{0, 1}, ResidueClass(2, 1), 1) == 5);
  CHECK(stirling_poly_sum(tables(), 9, IntPolynomial{}, ResidueClass(2, 1), 3) == 0);
  for (std::int64_t n = 1; n <= 20; ++n) {
    for (std::int64_t a = -2; a <= 3; ++a) {
      for (std::int64_t r = 0; r < 3; ++r) {
        REQUIRE(stirling_poly_sum(tables(), n, IntPolynomial{1}, ResidueClass(3, r), a) ==
                stirling_product_sum(tables(), n, 1, ResidueClass(3, r), a));
      }
    }
  }
}

TEST_CASE("residue classes partition the unfiltered sum") {
  for (std::int64_t n = 1; n <= 40; ++n) {
    for (std::int64_t p : {2, 3, 5}) {
      for (std::int64_t alpha : {1, 2}) {
        const std::int64_t d = int_pow(p, alpha);
        for (std::int64_t l : {0, 1, 3}) {
          ExactInt exact = 0, floor_total = 0, wan = 0;
          for (std::int64_t r = 0; r < d; ++r) {
            exact += fleck_sum(n, p, alpha, ResidueClass(d, r), l);
            wan += eulerian_wan_sum(tables(), n, p, alpha, ResidueClass(d, r), l);
          }
          const std::int64_t dp = int_pow(p, alpha - 1);
          for (std::int64_t r = 0; r < dp; ++r) {
            floor_total += fleck_sum(n, p, alpha, ResidueClass(dp, r), l, FleckVariant::Floor, alpha - 1);
          }
          // For canonical r = k mod d the weight index is floor(k / p^alpha).
          oracle::Int want = 0, want_wan = 0;
          for (std::int64_t k = 0; k <= n; ++k) {
            oracle::Int t = oracle::binom(n, k) * oracle::binom(k / d, l);
            want += (k % 2 == 0) ? t : oracle::Int(-t);
            if (k < n) want_wan += tables().eulerian(n, k) * oracle::binom(k / d, l);
          }
          REQUIRE(exact == want);
          REQUIRE(floor_total == want);
          REQUIRE(wan == want_wan);
        }
        for (std::int64_t a = -2; a <= 3; ++a) {
          ExactInt bp = 0, ep = 0;
          for (std::int64_t r = 0; r < d; ++r) {
            bp += binom_power_sum(n, p, alpha, ResidueClass(d, r), a);
            ep += eulerian_power_sum(tables(), n, p, alpha, ResidueClass(d, r), a);
          }
          REQUIRE(bp == oracle::ipow(1 - a, n));
          REQUIRE(ep == naive_eulerian_power(n, 1, 0, a));
        }
      }
    }
    for (std::int64_t d : {1, 2, 4, 6}) {
      for (std::int64_t a : {-2, 1, 3}) {
        ExactInt sp = 0, poly = 0;
        const IntPolynomial f{1, 1, 1};
        for (std::int64_t r = 0; r < d; ++r) {
          sp += stirling_product_sum(tables(), n, 2, ResidueClass(d, r), a);
          poly += stirling_poly_sum(tables(), n, f, ResidueClass(d, r), a);
        }
        REQUIRE(sp == naive_product(n, 2, 1, 0, a));
        REQUIRE(poly == naive_poly(n, f, 1, 0, a));
      }
    }
  }
}

TEST_CASE("shifting r by the modulus changes nothing") {
  for (std::int64_t n = 1; n <= 20; ++n) {
    for (std::int64_t r = 0; r < 4; ++r) {
      CHECK(fleck_sum(n, 2, 2, ResidueClass(4, r), 2) == fleck_sum(n, 2, 2, ResidueClass(4, r + 4), 2));
      CHECK(fleck_sum(n, 2, 2, ResidueClass(4, r), 2) == fleck_sum(n, 2, 2, ResidueClass(4, r - 8), 2));
      CHECK(stirling_product_sum(tables(), n, 2, ResidueClass(4, r), 3) ==
            stirling_product_sum(tables(), n, 2, ResidueClass(4, r + 4), 3));
      CHECK(eulerian_wan_sum(tables(), n, 2, 2, ResidueClass(4, r), 1) ==
            eulerian_wan_sum(tables(), n, 2, 2, ResidueClass(4, r + 4), 1));
    }
  }
}

TEST_CASE("stepped sums agree with the membership-test loop on random tuples") {
  std::mt19937_64 rng(12345);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const std::int64_t primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t p = primes[pick(0, 3)];
    const std::int64_t alpha = pick(1, 2);
    const std::int64_t beta = pick(0, alpha);
    const std::int64_t n = pick(1, 60);
    const std::int64_t r = pick(-50, 50);
    const std::int64_t l = pick(0, 4);
    const std::int64_t m = pick(1, 12);
    const std::int64_t d = pick(1, 12);
    const oracle::Int a = pick(-3, 4);
    const std::int64_t pa = int_pow(p, alpha);
    const std::int64_t pb = int_pow(p, beta);
    const IntPolynomial f{pick(-3, 3), pick(-3, 3), pick(-3, 3)};

    REQUIRE(fleck_sum(n, p, alpha, ResidueClass(pa, r), l) == naive_fleck(n, p, alpha, r, l, false, 0));
    REQUIRE(fleck_sum(n, p, alpha, ResidueClass(pb, r), l, FleckVariant::Floor, beta) ==
            naive_fleck(n, p, alpha, r, l, true, beta));
    REQUIRE(binom_power_sum(n, p, alpha, ResidueClass(pa, r), a) == naive_binom_power(n, pa, r, a));
    REQUIRE(eulerian_wan_sum(tables(), n, p, alpha, ResidueClass(pa, r), l) == naive_eulerian_wan(n, pa, r, l));
    REQUIRE(eulerian_power_sum(tables(), n, p, alpha, ResidueClass(pa, r), a) == naive_eulerian_power(n, pa, r, a));
    REQUIRE(stirling_product_sum(tables(), n, m, ResidueClass(d, r), a) == naive_product(n, m, d, r, a));
    REQUIRE(stirling_poly_sum(tables(), n, f, ResidueClass(d, r), a) == naive_poly(n, f, d, r, a));
  }
}
