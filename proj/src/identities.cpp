#include "clab/identities.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>

namespace clab {

namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 8> kIdentityNames{{
    {IdentityId::E1, "E1"},
    {IdentityId::E2, "E2"},
    {IdentityId::S3, "S3"},
    {IdentityId::SS3, "SS3"},
    {IdentityId::S4, "S4"},
    {IdentityId::SCL3E, "SCL3E"},
    {IdentityId::L31, "L31"},
    {IdentityId::L32, "L32"},
}};

constexpr std::array<IdentityId, 8> kAllIdentities{IdentityId::E1,  IdentityId::E2,    IdentityId::S3,
                                                   IdentityId::SS3, IdentityId::S4,    IdentityId::SCL3E,
                                                   IdentityId::L31, IdentityId::L32};

template <class... Pairs>
IdentityParams params_of(Pairs&&... pairs) {
  return IdentityParams{std::forward<Pairs>(pairs)...};
}

std::pair<std::string, std::string> kv(std::string name, std::int64_t value) {
  return {std::move(name), std::to_string(value)};
}

std::pair<std::string, std::string> kv(std::string name, const ExactInt& value) {
  return {std::move(name), to_decimal(value)};
}

IdentityCheckResult make_result(IdentityId id, IdentityParams params, bool pass) {
  IdentityCheckResult r;
  r.id = id;
  r.params = std::move(params);
  r.pass = pass;
  if (!pass) r.witness = r.params;
  return r;
}

std::uint64_t as_row(std::int64_t n) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  return static_cast<std::uint64_t>(n);
}

std::string range_text(const std::vector<std::int64_t>& v) {
  if (v.empty()) return "all";
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (static_cast<std::size_t>(*hi - *lo + 1) == v.size()) {
    return std::to_string(*lo) + ".." + std::to_string(*hi);
  }
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::int64_t> inclusive(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (std::int64_t x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

std::vector<std::pair<std::int64_t, std::int64_t>> scl3e_pairs(const IdentityRanges& r) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::vector<std::int64_t> primes = r.primes;
  if (primes.empty()) {
    for (std::int64_t p = 2; p * (p - 1) <= r.scl3e_modulus_limit; ++p) {
      if (is_prime(p)) primes.push_back(p);
    }
  }
  for (auto p : primes) {
    require_prime(p);
    if (!r.alpha.empty()) {
      for (auto a : r.alpha) pairs.emplace_back(p, a);
      continue;
    }
    for (std::int64_t a = 1; int_pow(p, static_cast<std::uint64_t>(a)) * (p - 1) <= r.scl3e_modulus_limit; ++a) {
      pairs.emplace_back(p, a);
    }
  }
  return pairs;
}

}  // namespace

std::string_view identity_name(IdentityId id) {
  for (const auto& [v, name] : kIdentityNames) {
    if (v == id) return name;
  }
  return "UNKNOWN";
}

IdentityId parse_identity_id(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto& [v, name] : kIdentityNames) {
    if (name == upper) return v;
  }
  throw ParameterError("unknown identity '" + std::string(text) + "'");
}

std::span<const IdentityId> all_identities() { return kAllIdentities; }

IdentityCheckResult check_E1(const TriangleSet& tables, std::int64_t n, std::int64_t l) {
  if (n < 1) throw ParameterError("E1 needs n >= 1");
  if (l < 0) throw ParameterError("E1 needs l >= 0");
  const auto row = as_row(n);
  const auto ul = static_cast<std::uint64_t>(l);
  bool pass = true;
  for (std::int64_t i = 0; i <= n && pass; ++i) {
    const ExactInt lhs = tables.eulerian(row, i) * power(i, ul);
    ExactInt rhs = 0;
    for (std::int64_t m = 0; m <= n; ++m) {
      const std::int64_t rest = n - m;
      if (i > rest) continue;
      ExactInt term = factorial(static_cast<std::uint64_t>(m)) * tables.stirling2(row, m) * binom(rest, i) * power(i, ul);
      if ((rest - i) % 2 != 0) term = -term;
      rhs += term;
    }
    pass = lhs == rhs;
  }
  return make_result(IdentityId::E1, params_of(kv("n", n), kv("l", l)), pass);
}

IdentityCheckResult check_E2(const TriangleSet& tables, std::int64_t n) {
  if (n < 1) throw ParameterError("E2 needs n >= 1");
  const auto row = as_row(n);
  // Accumulate sum_m m! S(n,m) (x-1)^(n-m) by expanding powers of (x-1) one factor at a time.
  std::vector<ExactInt> rhs(static_cast<std::size_t>(n) + 1, ExactInt(0));
  std::vector<ExactInt> shifted{ExactInt(1)};  // (x-1)^j, j = n - m
  for (std::int64_t m = n; m >= 0; --m) {
    const ExactInt weight = factorial(static_cast<std::uint64_t>(m)) * tables.stirling2(row, m);
    for (std::size_t i = 0; i < shifted.size(); ++i) rhs[i] += weight * shifted[i];
    std::vector<ExactInt> next(shifted.size() + 1, ExactInt(0));
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      next[i + 1] += shifted[i];
      next[i] -= shifted[i];
    }
    shifted = std::move(next);
  }
  bool pass = true;
  for (std::int64_t i = 0; i <= n; ++i) {
    if (tables.eulerian(row, i) != rhs[static_cast<std::size_t>(i)]) pass = false;
  }
  return make_result(IdentityId::E2, params_of(kv("n", n)), pass);
}

IdentityCheckResult check_S3(const TriangleSet& tables, std::int64_t n, std::int64_t k) {
  if (k < 1) throw ParameterError("S3 needs k >= 1");
  const auto row = as_row(n);
  const ExactInt lhs = factorial(static_cast<std::uint64_t>(k)) * tables.stirling2(row, k);
  ExactInt rhs = 0;
  const ExactInt k1_fact = factorial(static_cast<std::uint64_t>(k - 1));
  for (std::int64_t i = k - 1; i <= n - 1; ++i) {
    rhs += binom(n, i) * k1_fact * tables.stirling2(static_cast<std::uint64_t>(i), k - 1);
  }
  return make_result(IdentityId::S3, params_of(kv("n", n), kv("k", k)), lhs == rhs);
}

IdentityCheckResult check_SS3(const TriangleSet& tables, std::int64_t n, std::int64_t k) {
  if (k < 1) throw ParameterError("SS3 needs k >= 1");
  const auto row = as_row(n);
  const ExactInt lhs = k * tables.stirling1(row, k);
  ExactInt rhs = 0;
  for (std::int64_t i = k - 1; i <= n - 1; ++i) {
    rhs += binom(n, i) * factorial(static_cast<std::uint64_t>(n - i - 1)) *
           tables.stirling1(static_cast<std::uint64_t>(i), k - 1);
  }
  return make_result(IdentityId::SS3, params_of(kv("n", n), kv("k", k)), lhs == rhs);
}

IdentityCheckResult check_S4(const TriangleSet& tables, std::int64_t n, std::int64_t k, std::int64_t p,
                             std::int64_t alpha) {
  require_prime(p);
  if (alpha < 1) throw ParameterError("S4 needs alpha >= 1");
  if (k < 0) throw ParameterError("S4 needs k >= 0");
  const auto row = as_row(n);
  const ExactInt value = factorial(static_cast<std::uint64_t>(k)) * tables.stirling2(row, k);
  const PAdicOrder ord = ord_p(value, p);
  const std::int64_t q = int_pow(p, static_cast<std::uint64_t>(alpha - 1));
  const std::int64_t bound =
      static_cast<std::int64_t>(ord_p_factorial(static_cast<std::uint64_t>(n / q), p)) - floor_div(n - k, q * (p - 1));
  const bool pass = ord.is_infinite() || static_cast<std::int64_t>(ord.value()) >= bound;
  return make_result(IdentityId::S4, params_of(kv("n", n), kv("k", k), kv("p", p), kv("alpha", alpha)), pass);
}

IdentityCheckResult check_SCL3E(const TriangleSet& tables, std::int64_t p, std::int64_t alpha) {
  require_prime(p);
  if (alpha < 1) throw ParameterError("SCL3E needs alpha >= 1");
  const std::int64_t step = int_pow(p, static_cast<std::uint64_t>(alpha - 1)) * (p - 1);
  const std::int64_t size = step * p;
  const auto& row = tables.table(Family::Stirling1).row(static_cast<std::uint64_t>(size));
  bool pass = true;
  const ExactInt prime = p;
  for (std::int64_t k = 1; k <= size && pass; ++k) {
    ExactInt residue;
    mpz_fdiv_r(residue.get_mpz_t(), row[static_cast<std::size_t>(k)].get_mpz_t(), prime.get_mpz_t());
    const long expected = (k % step == 0) ? 1 : 0;
    pass = residue == expected;
  }
  return make_result(IdentityId::SCL3E, params_of(kv("p", p), kv("alpha", alpha)), pass);
}

IdentityCheckResult check_L31(std::int64_t n, std::int64_t p, const ExactInt& x, const ExactInt& x_prime) {
  require_prime(p);
  if (n < 0) throw ParameterError("L31 needs n >= 0");
  const ExactInt modulus = power(p, ord_p_factorial(static_cast<std::uint64_t>(n), p) + 1);
  ExactInt diff = x - x_prime;
  if (mpz_divisible_p(diff.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw ParameterError("L31 needs x = x' (mod p^(ord_p(n!)+1))");
  }
  ExactInt gap = binom(x, n) - binom(x_prime, n);
  const bool pass = mpz_divisible_ui_p(gap.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
  return make_result(IdentityId::L31, params_of(kv("n", n), kv("p", p), kv("x", x), kv("x_prime", x_prime)),
                     pass);
}

IdentityCheckResult check_L32(std::int64_t n, std::int64_t l, std::int64_t i) {
  if (n < 0 || l < 0 || i < 0 || i > n) throw ParameterError("L32 needs n, l >= 0 and 0 <= i <= n");
  const bool pass = (n - i) * binom(i, l - 1) <= binom(n, l);
  return make_result(IdentityId::L32, params_of(kv("n", n), kv("l", l), kv("i", i)), pass);
}

IdentityRanges default_ranges(IdentityId id) {
  IdentityRanges r;
  switch (id) {
    case IdentityId::E1: r.n = inclusive(1, 12); r.l = inclusive(0, 4); break;
    case IdentityId::E2: r.n = inclusive(1, 12); break;
    case IdentityId::S3:
    case IdentityId::SS3: r.n = inclusive(1, 20); break;
    case IdentityId::S4:
      r.n = inclusive(0, 40);
      r.primes = {2, 3, 5};
      r.alpha = {1, 2};
      break;
    case IdentityId::SCL3E: break;
    case IdentityId::L31:
      r.n = inclusive(0, 12);
      r.primes = {2, 3, 5, 7};
      break;
    case IdentityId::L32: r.n = inclusive(0, 60); break;
  }
  return r;
}

std::uint64_t identity_max_n(IdentityId id, const IdentityRanges& ranges) {
  if (id == IdentityId::L31 || id == IdentityId::L32) return 0;
  if (id == IdentityId::SCL3E) {
    std::int64_t most = 0;
    for (auto [p, a] : scl3e_pairs(ranges)) {
      most = std::max(most, int_pow(p, static_cast<std::uint64_t>(a)) * (p - 1));
    }
    return static_cast<std::uint64_t>(most);
  }
  if (ranges.n.empty()) return 0;
  return static_cast<std::uint64_t>(std::max<std::int64_t>(0, *std::max_element(ranges.n.begin(), ranges.n.end())));
}

IdentityCheckResult run_identity_suite(const TriangleSet& tables, IdentityId id, const IdentityRanges& ranges) {
  IdentityCheckResult suite;
  suite.id = id;
  suite.checked = 0;

  auto absorb = [&](const IdentityCheckResult& one) {
    ++suite.checked;
    if (!one.pass && suite.pass) {
      suite.pass = false;
      suite.witness = one.params;
    }
  };
  auto ks_for = [&](std::int64_t lo, std::int64_t hi) {
    return ranges.k.empty() ? inclusive(lo, hi) : ranges.k;
  };

  switch (id) {
    case IdentityId::E1:
      suite.params = params_of(std::pair{"n", range_text(ranges.n)}, std::pair{"l", range_text(ranges.l)});
      for (auto n : ranges.n)
        for (auto l : ranges.l) absorb(check_E1(tables, n, l));
      break;
    case IdentityId::E2:
      suite.params = params_of(std::pair{"n", range_text(ranges.n)});
      for (auto n : ranges.n) absorb(check_E2(tables, n));
      break;
    case IdentityId::S3:
    case IdentityId::SS3:
      suite.params = params_of(std::pair{"n", range_text(ranges.n)}, std::pair{"k", range_text(ranges.k)});
      for (auto n : ranges.n) {
        for (auto k : ks_for(1, n)) {
          if (k < 1) continue;
          absorb(id == IdentityId::S3 ? check_S3(tables, n, k) : check_SS3(tables, n, k));
        }
      }
      break;
    case IdentityId::S4:
      suite.params = params_of(std::pair{"n", range_text(ranges.n)}, std::pair{"k", range_text(ranges.k)},
                               std::pair{"p", range_text(ranges.primes)},
                               std::pair{"alpha", range_text(ranges.alpha)});
      for (auto p : ranges.primes)
        for (auto alpha : ranges.alpha)
          for (auto n : ranges.n)
            for (auto k : ks_for(0, n + 1)) absorb(check_S4(tables, n, k, p, alpha));
      break;
    case IdentityId::SCL3E: {
      suite.params = params_of(std::pair{"p", range_text(ranges.primes)}, std::pair{"alpha", range_text(ranges.alpha)},
                               std::pair{"modulus_limit", std::to_string(ranges.scl3e_modulus_limit)});
      for (auto [p, alpha] : scl3e_pairs(ranges)) absorb(check_SCL3E(tables, p, alpha));
      break;
    }
    case IdentityId::L31: {
      suite.params = params_of(std::pair{"n", range_text(ranges.n)}, std::pair{"p", range_text(ranges.primes)},
                               std::pair{"samples", std::to_string(ranges.samples)},
                               std::pair{"seed", std::to_string(ranges.seed)});
      if (ranges.n.empty() || ranges.primes.empty()) throw ParameterError("L31 needs n and p ranges");
      std::mt19937_64 rng(ranges.seed);
      std::uniform_int_distribution<std::size_t> pick_n(0, ranges.n.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_p(0, ranges.primes.size() - 1);
      std::uniform_int_distribution<long> pick_x(-1000, 1000);
      std::uniform_int_distribution<long> pick_t(-5, 5);
      for (std::size_t s = 0; s < ranges.samples; ++s) {
        const std::int64_t n = ranges.n[pick_n(rng)];
        const std::int64_t p = ranges.primes[pick_p(rng)];
        const ExactInt x = pick_x(rng);
        const ExactInt step = power(p, ord_p_factorial(static_cast<std::uint64_t>(n), p) + 1);
        const ExactInt x_prime = x + pick_t(rng) * step;
        absorb(check_L31(n, p, x, x_prime));
      }
      break;
    }
    case IdentityId::L32:
      suite.params = params_of(std::pair{"n", range_text(ranges.n)}, std::pair{"l", range_text(ranges.l)});
      for (auto n : ranges.n) {
        const auto ls = ranges.l.empty() ? inclusive(0, n) : ranges.l;
        for (auto l : ls)
          for (std::int64_t i = 0; i <= n; ++i) absorb(check_L32(n, l, i));
      }
      break;
  }
  return suite;
}

}  // namespace clab
