#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "clab/exactmath.hpp"

namespace clab {

/// Every congruence whose exponent bound is checked.
enum class TheoremId {
  Fleck,        // FLECK_1_1
  Weisman,      // WEISMAN_1_2
  Wan,          // WAN_1_3
  Sun,          // SUN_1_4
  WanImproved,  // WAN_1_5
  DavisSun6,    // DS_1_6
  DavisSun7,    // DS_1_7
  EC1,
  EC2,
  SC1,
  SC2,
  SC3,
  SunPowerInferred,  // SU_1_8_INFERRED: the binomial power-sum bound behind EC2
};

std::string_view theorem_name(TheoremId id);
/// Accepts canonical names (FLECK_1_1) and short lowercase aliases (fleck, ec2, ...).
TheoremId parse_theorem_id(std::string_view text);
std::span<const TheoremId> all_theorems();

/// Parameters for one bound. Fields a theorem does not use are ignored.
struct BoundSpec {
  TheoremId theorem = TheoremId::Fleck;
  std::int64_t n = 0;
  std::int64_t p = 2;
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  std::int64_t l = 0;
  std::int64_t m = 0;
  ExactInt a = 1;
};

/// Why the theorem's hypotheses fail for spec, or nullopt when they hold.
std::optional<std::string> hypothesis_violation(const BoundSpec& spec);

/// The exponent on the right-hand side, evaluated regardless of hypotheses.
/// May be negative. SC2 has no integer exponent: use sc2_compare instead.
std::int64_t bound_exponent(const BoundSpec& spec);

/// bound_exponent when the hypotheses hold, nullopt (not applicable) otherwise.
std::optional<std::int64_t> applicable_bound(const BoundSpec& spec);

/// Exact form of ord_p(sum) >= ord_p(n!) - log_p binom(n, l) with
/// l = min(deg f, floor(n/p)): binom(n,l) * p^ord_p(sum) >= p^ord_p(n!).
struct Sc2Comparison {
  bool holds = true;
  std::int64_t l = 0;
  std::optional<ExactInt> lhs;  // binom(n,l) * p^ord; absent when sum = 0
  ExactInt rhs;                 // p^ord_p(n!)
  /// True when binom(n,l) >= p^ord_p(n!), i.e. the real bound is <= 0.
  bool trivial = false;
};

Sc2Comparison sc2_compare(std::int64_t n, std::int64_t p, const IntPolynomial& f, const ExactInt& sum);
bool sc2_holds(std::int64_t n, std::int64_t p, const IntPolynomial& f, const ExactInt& sum);

}  // namespace clab
