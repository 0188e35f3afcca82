#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clab/exactmath.hpp"
#include "clab/triangles.hpp"

namespace clab {

// Executable checks of the supporting identities and lemmas:
//   E1    sum_k <n k> f(k) x^k = sum_m m! S(n,m) sum_i binom(n-m,i) (-1)^(n-m-i) f(i) x^i, f = x^l
//   E2    sum_k <n k> x^k = sum_m m! S(n,m) (x-1)^(n-m)
//   S3    k! S(n,k) = sum_{i=k-1}^{n-1} binom(n,i) (k-1)! S(i,k-1)
//   SS3   k s(n,k) = sum_{i=k-1}^{n-1} binom(n,i) (n-i-1)! s(i,k-1)
//   S4    ord_p(k! S(n,k)) >= ord_p(floor(n/p^(alpha-1))!) - floor((n-k)/(p^(alpha-1)(p-1)))
//   SCL3E s(p^alpha(p-1), k) = [p^(alpha-1)(p-1) | k] (mod p) for 1 <= k <= p^alpha(p-1)
//   L31   x = x' (mod p^(ord_p(n!)+1)) implies binom(x,n) = binom(x',n) (mod p)
//   L32   (n-i) binom(i,l-1) <= binom(n,l) for 0 <= i <= n
enum class IdentityId { E1, E2, S3, SS3, S4, SCL3E, L31, L32 };

std::string_view identity_name(IdentityId id);
IdentityId parse_identity_id(std::string_view text);
std::span<const IdentityId> all_identities();

/// Ordered name/value pairs describing a tuple or a range.
using IdentityParams = std::vector<std::pair<std::string, std::string>>;

struct IdentityCheckResult {
  IdentityId id = IdentityId::E1;
  IdentityParams params;
  bool pass = true;
  std::optional<IdentityParams> witness;  // first failing tuple
  std::size_t checked = 1;                // tuples examined
};

IdentityCheckResult check_E1(const TriangleSet& tables, std::int64_t n, std::int64_t l);
IdentityCheckResult check_E2(const TriangleSet& tables, std::int64_t n);
IdentityCheckResult check_S3(const TriangleSet& tables, std::int64_t n, std::int64_t k);
IdentityCheckResult check_SS3(const TriangleSet& tables, std::int64_t n, std::int64_t k);
IdentityCheckResult check_S4(const TriangleSet& tables, std::int64_t n, std::int64_t k, std::int64_t p,
                             std::int64_t alpha);
IdentityCheckResult check_SCL3E(const TriangleSet& tables, std::int64_t p, std::int64_t alpha);
/// ParameterError unless x = x' (mod p^(ord_p(n!)+1)).
IdentityCheckResult check_L31(std::int64_t n, std::int64_t p, const ExactInt& x, const ExactInt& x_prime);
IdentityCheckResult check_L32(std::int64_t n, std::int64_t l, std::int64_t i);

/// Ranges for a whole identity suite. Empty k means every k relevant to n;
/// empty l for L32 means every l in [0, n].
struct IdentityRanges {
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> k;
  std::vector<std::int64_t> l;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> alpha;
  std::int64_t scl3e_modulus_limit = 100;  // all (p, alpha) with p^alpha(p-1) <= limit
  std::size_t samples = 200;               // L31 random tuples
  std::uint64_t seed = 20240229;
};

IdentityRanges default_ranges(IdentityId id);

/// Largest triangle row the suite touches.
std::uint64_t identity_max_n(IdentityId id, const IdentityRanges& ranges);

/// Runs the check over every tuple of the ranges. The result's params
/// describe the ranges; witness is the first failing tuple.
IdentityCheckResult run_identity_suite(const TriangleSet& tables, IdentityId id, const IdentityRanges& ranges);

}  // namespace clab
