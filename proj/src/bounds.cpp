#include "clab/bounds.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace clab {

namespace {

struct TheoremNames {
  TheoremId id;
  std::string_view canonical;
  std::string_view alias;
};

constexpr std::array<TheoremNames, 13> kNames{{
    {TheoremId::Fleck, "FLECK_1_1", "fleck"},
    {TheoremId::Weisman, "WEISMAN_1_2", "weisman"},
    {TheoremId::Wan, "WAN_1_3", "wan13"},
    {TheoremId::Sun, "SUN_1_4", "sun14"},
    {TheoremId::WanImproved, "WAN_1_5", "wan15"},
    {TheoremId::DavisSun6, "DS_1_6", "ds16"},
    {TheoremId::DavisSun7, "DS_1_7", "ds17"},
    {TheoremId::EC1, "EC1", "ec1"},
    {TheoremId::EC2, "EC2", "ec2"},
    {TheoremId::SC1, "SC1", "sc1"},
    {TheoremId::SC2, "SC2", "sc2"},
    {TheoremId::SC3, "SC3", "sc3"},
    {TheoremId::SunPowerInferred, "SU_1_8_INFERRED", "su18"},
}};

constexpr std::array<TheoremId, 13> kAll = [] {
  std::array<TheoremId, 13> ids{};
  for (std::size_t i = 0; i < kNames.size(); ++i) ids[i] = kNames[i].id;
  return ids;
}();

std::int64_t pow_of(const BoundSpec& s, std::int64_t e) {
  return int_pow(s.p, static_cast<std::uint64_t>(e));
}

std::int64_t ord_fact(std::int64_t n, std::int64_t p) {
  return static_cast<std::int64_t>(ord_p_factorial(static_cast<std::uint64_t>(std::max<std::int64_t>(n, 0)), p));
}

bool congruent_to_one(const ExactInt& a, std::int64_t p) {
  ExactInt diff = a - 1;
  return mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) return entry.canonical;
  }
  return "UNKNOWN";
}

TheoremId parse_theorem_id(std::string_view text) {
  std::string upper(text), lower(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const auto& entry : kNames) {
    if (entry.canonical == upper || entry.alias == lower) return entry.id;
  }
  throw ParameterError("unknown theorem id '" + std::string(text) + "'");
}

std::span<const TheoremId> all_theorems() { return kAll; }

std::optional<std::string> hypothesis_violation(const BoundSpec& s) {
  require_prime(s.p);
  const auto need = [](bool ok, const char* what) -> std::optional<std::string> {
    if (ok) return std::nullopt;
    return std::string(what);
  };
  if (s.n < 1) return "n must be positive";
  if (s.l < 0) return "l must be nonnegative";
  switch (s.theorem) {
    case TheoremId::Fleck:
      return std::nullopt;
    case TheoremId::Weisman:
    case TheoremId::WanImproved:
    case TheoremId::DavisSun6:
    case TheoremId::DavisSun7:
    case TheoremId::EC1:
      return need(s.alpha >= 1, "alpha must be positive");
    case TheoremId::Wan:
      return need(s.n > s.l * s.p, "requires n > l*p");
    case TheoremId::Sun:
      if (s.alpha < 1) return "alpha must be positive";
      if (s.beta < 0 || s.beta > s.alpha) return "requires alpha >= beta >= 0";
      return need(s.n >= pow_of(s, s.alpha - 1), "requires n >= p^(alpha-1)");
    case TheoremId::EC2:
      if (s.alpha < 1) return "alpha must be positive";
      if (!congruent_to_one(s.a, s.p)) return "requires a = 1 (mod p)";
      return need(s.n >= pow_of(s, s.alpha), "requires n >= p^alpha");
    case TheoremId::SunPowerInferred:
      if (s.alpha < 1) return "alpha must be positive";
      return need(congruent_to_one(s.a, s.p), "requires a = 1 (mod p)");
    case TheoremId::SC1:
      return need(s.m >= 1, "m must be positive");
    case TheoremId::SC2:
      return std::nullopt;
    case TheoremId::SC3:
      if (s.alpha < 1) return "alpha must be positive";
      return need(s.m >= 1, "m must be positive");
  }
  return "unknown theorem";
}

std::int64_t bound_exponent(const BoundSpec& s) {
  require_prime(s.p);
  const std::int64_t p = s.p;
  switch (s.theorem) {
    case TheoremId::Fleck:
      return floor_div(s.n - 1, p - 1);
    case TheoremId::Weisman: {
      const std::int64_t q = pow_of(s, s.alpha - 1);
      return floor_div(s.n - q, q * (p - 1));
    }
    case TheoremId::Wan:
      return floor_div(s.n - s.l * p - 1, p - 1);
    case TheoremId::Sun: {
      const std::int64_t q = pow_of(s, s.alpha - 1);
      return floor_div(s.n - q - s.l, q * (p - 1)) - (s.l - 1) * s.alpha - s.beta;
    }
    case TheoremId::WanImproved: {
      const std::int64_t q = pow_of(s, s.alpha - 1);
      return floor_div(s.n - q - s.l * pow_of(s, s.alpha), q * (p - 1));
    }
    case TheoremId::DavisSun6:
      return ord_fact(floor_div(s.n, pow_of(s, s.alpha)), p);
    case TheoremId::DavisSun7:
      return ord_fact(floor_div(s.n, pow_of(s, s.alpha - 1)), p) - s.l - ord_fact(s.l, p);
    case TheoremId::EC1: {
      const std::int64_t q = pow_of(s, s.alpha - 1);
      return ord_fact(floor_div(s.n, q), p) - ceil_div(q + s.l * pow_of(s, s.alpha), q * (p - 1));
    }
    case TheoremId::EC2:
      return ord_fact(floor_div(s.n, pow_of(s, s.alpha - 1)), p) - 1;
    case TheoremId::SC1:
      return ord_fact(s.n, p) - ord_fact(s.m, p);
    case TheoremId::SC2:
      throw ParameterError("SC2 has no integer exponent; use sc2_compare");
    case TheoremId::SC3: {
      const std::int64_t q = pow_of(s, s.alpha);
      return floor_div(s.n - q, q * (p - 1)) - ord_fact(s.m, p);
    }
    case TheoremId::SunPowerInferred: {
      const std::int64_t q = pow_of(s, s.alpha - 1);
      return floor_div(s.n - q, q * (p - 1));
    }
  }
  throw ParameterError("unknown theorem");
}

std::optional<std::int64_t> applicable_bound(const BoundSpec& spec) {
  if (hypothesis_violation(spec)) return std::nullopt;
  return bound_exponent(spec);
}

Sc2Comparison sc2_compare(std::int64_t n, std::int64_t p, const IntPolynomial& f, const ExactInt& sum) {
  require_prime(p);
  if (n < 0) throw ParameterError("n must be nonnegative");
  Sc2Comparison out;
  out.l = std::min<std::int64_t>(static_cast<std::int64_t>(f.degree()), n / p);
  const ExactInt binom_nl = binom(n, out.l);
  out.rhs = power(p, ord_p_factorial(static_cast<std::uint64_t>(n), p));
  out.trivial = binom_nl >= out.rhs;
  const PAdicOrder ord = ord_p(sum, p);
  if (ord.is_infinite()) {
    out.holds = true;
    return out;
  }
  out.lhs = binom_nl * power(p, ord.value());
  out.holds = *out.lhs >= out.rhs;
  return out;
}

bool sc2_holds(std::int64_t n, std::int64_t p, const IntPolynomial& f, const ExactInt& sum) {
  return sc2_compare(n, p, f, sum).holds;
}

}  // namespace clab
