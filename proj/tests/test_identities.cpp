#include <doctest.h>

#include "clab/identities.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

const TriangleSet& tables() {
  static const TriangleSet t(100);
  return t;
}

}  // namespace

TEST_CASE("E1 and E2 examples") {
  CHECK(check_E1(tables(), 3, 0).pass);
  for (std::int64_t l = 0; l <= 6; ++l) CHECK(check_E1(tables(), 1, l).pass);
  CHECK(check_E1(tables(), 5, 3).pass);
  CHECK(check_E2(tables(), 1).pass);
  CHECK(check_E2(tables(), 4).pass);
  CHECK(check_E2(tables(), 8).pass);
}

TEST_CASE("E1 at l = 0 agrees with E2") {
  for (std::int64_t n = 1; n <= 30; ++n) REQUIRE(check_E1(tables(), n, 0).pass == check_E2(tables(), n).pass);
}

TEST_CASE("recurrence examples") {
  CHECK(check_S3(tables(), 4, 4).pass);
  CHECK(check_S3(tables(), 4, 2).pass);
  CHECK(check_S3(tables(), 7, 3).pass);
  CHECK(check_SS3(tables(), 4, 4).pass);
  CHECK(check_SS3(tables(), 4, 2).pass);
  CHECK(check_SS3(tables(), 6, 3).pass);
  // Right side of SS3 at n=4, k=2 from independent oracles.
  const auto s1 = oracle::rising_coefficients(3);
  oracle::Int rhs = 0;
  for (std::int64_t i = 1; i <= 3; ++i) {
    const auto row = oracle::rising_coefficients(i);
    rhs += oracle::binom(4, i) * oracle::factorial(3 - i) * row[1];
  }
  CHECK(rhs == 22);
  CHECK(2 * oracle::rising_coefficients(4)[2] == 22);
  CHECK(s1[1] == 2);
}

TEST_CASE("S4 examples") {
  CHECK(check_S4(tables(), 3, 5, 2, 1).pass);  // k > n
  CHECK(check_S4(tables(), 6, 2, 2, 1).pass);
  CHECK(check_S4(tables(), 10, 4, 3, 2).pass);
  // ord_2(2! S(6,2)) = ord_2(62) = 1, bound 4 - 4 = 0
  CHECK(oracle::ord(2 * oracle::stirling2_explicit(6, 2), 2) == 1);
}

TEST_CASE("SCL3E examples") {
  CHECK(check_SCL3E(tables(), 2, 1).pass);
  CHECK(check_SCL3E(tables(), 3, 1).pass);
  CHECK(check_SCL3E(tables(), 2, 2).pass);
  const auto row = oracle::rising_coefficients(6);
  const std::vector<oracle::Int> expect{120, 274, 225, 85, 15, 1};
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(row[k] == expect[k - 1]);
    CHECK((row[k] % 3 == 1) == (k % 2 == 0));
  }
}

TEST_CASE("SCL3E runs every small modulus") {
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    for (std::int64_t alpha = 1; oracle::ipow(p, alpha - 1) * p * (p - 1) <= 100; ++alpha) {
      INFO("p=" << p << " alpha=" << alpha);
      CHECK(check_SCL3E(tables(), p, alpha).pass);
    }
  }
}

TEST_CASE("L31 examples") {
  CHECK(check_L31(4, 2, 5, 5).pass);
  CHECK(check_L31(4, 2, 1, 17).pass);
  CHECK(oracle::binom(17, 4) == 2380);
  CHECK(check_L31(3, 3, -2, 25).pass);
  CHECK(check_L31(0, 5, -7, 13).pass);
  CHECK_THROWS_AS(check_L31(4, 2, 1, 9), ParameterError);  // 16 does not divide 8
  CHECK_THROWS_AS(check_L31(4, 6, 1, 1), ParameterError);
}

TEST_CASE("L31 agrees with a direct negative-argument binomial") {
  // binom(-x, n) = (-1)^n binom(x+n-1, n)
  for (std::int64_t n = 0; n <= 6; ++n) {
    for (std::int64_t p : {2, 3, 5}) {
      const std::int64_t mod = oracle::ipow(p, oracle::ord(oracle::factorial(n), p) + 1).get_si();
      for (std::int64_t x = -40; x <= 40; x += 7) {
        const auto at = [&](std::int64_t y) -> oracle::Int {
          if (y >= 0) return oracle::binom(y, n);
          oracle::Int b = oracle::binom(-y + n - 1, n);
          return n % 2 ? oracle::Int(-b) : b;
        };
        const oracle::Int lhs = at(x), rhs = at(x + 3 * mod);
        oracle::Int diff = lhs - rhs;
        REQUIRE(diff % p == 0);
        REQUIRE(check_L31(n, p, x, x + 3 * mod).pass);
      }
    }
  }
}

TEST_CASE("L32 examples") {
  CHECK(check_L32(10, 0, 4).pass);
  CHECK(check_L32(10, 3, 7).pass);
  CHECK(oracle::binom(7, 2) * 3 == 63);
  CHECK(check_L32(10, 3, 10).pass);
  CHECK(check_L32(0, 0, 0).pass);
}

TEST_CASE("default suites pass") {
  for (IdentityId id : all_identities()) {
    const auto ranges = default_ranges(id);
    INFO(identity_name(id));
    REQUIRE(identity_max_n(id, ranges) <= tables().max_n());
    const auto result = run_identity_suite(tables(), id, ranges);
    CHECK(result.pass);
    CHECK_FALSE(result.witness);
    CHECK(result.checked > 0);
  }
}

TEST_CASE("suite tuple counts") {
  auto r = default_ranges(IdentityId::L32);
  r.n = {0, 1, 2, 3};
  // sum over n of (n+1)^2 pairs (l, i)
  CHECK(run_identity_suite(tables(), IdentityId::L32, r).checked == 1 + 4 + 9 + 16);
  auto l31 = default_ranges(IdentityId::L31);
  l31.samples = 37;
  CHECK(run_identity_suite(tables(), IdentityId::L31, l31).checked == 37);
}

TEST_CASE("L31 sampling is reproducible") {
  auto r = default_ranges(IdentityId::L31);
  r.samples = 20;
  const auto a = run_identity_suite(tables(), IdentityId::L31, r);
  const auto b = run_identity_suite(tables(), IdentityId::L31, r);
  CHECK(a.params == b.params);
  CHECK(a.checked == b.checked);
}

TEST_CASE("identity names") {
  for (IdentityId id : all_identities()) CHECK(parse_identity_id(identity_name(id)) == id);
  CHECK(parse_identity_id("scl3e") == IdentityId::SCL3E);
  CHECK_THROWS_AS(parse_identity_id("E9"), ParameterError);
  CHECK(all_identities().size() == 8);
}

TEST_CASE("suites beyond the tables are a capacity error") {
  const TriangleSet small(5);
  auto r = default_ranges(IdentityId::S3);
  CHECK_THROWS_AS(run_identity_suite(small, IdentityId::S3, r), CapacityError);
}
