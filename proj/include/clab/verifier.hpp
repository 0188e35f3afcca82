#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clab/bounds.hpp"
#include "clab/exactmath.hpp"
#include "clab/filtered_sums.hpp"
#include "clab/triangles.hpp"

namespace clab {

enum class Verdict { Holds, HoldsVacuous, HoldsTrivialBound, Tight, Violation, NotApplicable };

inline constexpr std::array<Verdict, 6> kAllVerdicts{Verdict::Holds,     Verdict::HoldsVacuous,
                                                     Verdict::HoldsTrivialBound, Verdict::Tight,
                                                     Verdict::Violation, Verdict::NotApplicable};

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view text);

/// Parameters of one claim. Each theorem reads only the fields named by
/// parameter_names(); a missing required field is a ParameterError.
struct ClaimParams {
  std::optional<std::int64_t> n, p, alpha, beta, l, m, r;
  std::optional<ExactInt> a;
  std::optional<IntPolynomial> f;

  friend bool operator==(const ClaimParams&, const ClaimParams&) = default;
};

/// Parameter names a theorem uses, in tuple (sort) order.
std::span<const std::string_view> parameter_names(TheoremId id);

/// Modulus d of the residue filter for the theorem at these parameters.
std::int64_t claim_modulus(TheoremId id, const ClaimParams& params);

struct ClaimRecord {
  TheoremId theorem = TheoremId::Fleck;
  ClaimParams params;
  std::optional<ExactInt> sum;
  std::optional<PAdicOrder> ord;
  std::optional<std::int64_t> bound;  // integer-bound theorems
  std::optional<Sc2Comparison> sc2;   // SC2 only
  Verdict verdict = Verdict::NotApplicable;
  std::optional<std::int64_t> margin;  // ord - bound when both finite
  std::string note;                    // why a claim is not applicable
};

enum class ResiduePolicy { All, List };

struct GridSpec {
  TheoremId theorem = TheoremId::Fleck;
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> alpha{1};
  std::vector<std::int64_t> beta{0};
  std::vector<std::int64_t> l{0};
  std::vector<std::int64_t> m{1};  // values above n are skipped per tuple
  std::vector<ExactInt> a{ExactInt(1)};
  // When nonempty, a runs over 1 + t*p for each t here instead of `a`.
  std::vector<std::int64_t> a_p_steps;
  ResiduePolicy residues = ResiduePolicy::All;
  std::vector<std::int64_t> residue_list;
  std::vector<IntPolynomial> polys;
  // Evaluate tuples outside the hypotheses too; they stay NOT-APPLICABLE.
  bool evaluate_outside_hypotheses = false;
};

/// Throws ParameterError when a range the theorem needs is empty or invalid.
void validate_grid(const GridSpec& grid);

/// All tuples of the grid in deterministic order: nested loops over
/// p, alpha, beta, l, n, m, f, a, r (each ascending, f in list order).
std::vector<ClaimParams> enumerate_tuples(const GridSpec& grid);

std::int64_t grid_max_n(const GridSpec& grid);

struct GridSummary {
  std::size_t total = 0;
  std::array<std::size_t, kAllVerdicts.size()> counts{};
  std::optional<std::int64_t> min_margin;
  std::optional<std::size_t> first_violation;  // index into records

  std::size_t count(Verdict v) const { return counts[static_cast<std::size_t>(v)]; }
};

struct GridReport {
  GridSpec grid;
  std::vector<ClaimRecord> records;
  GridSummary summary;
};

GridSummary summarize(std::span<const ClaimRecord> records);

class Verifier {
 public:
  explicit Verifier(const TriangleSet& tables) : tables_(tables) {}

  /// Evaluates one claim: the filtered sum, its p-adic order, the bound and
  /// the verdict. Hypothesis failures give NOT-APPLICABLE.
  ClaimRecord check_claim(TheoremId id, const ClaimParams& params,
                          bool evaluate_outside_hypotheses = false) const;

  /// Runs every tuple of the grid on `workers` threads. Record order is the
  /// tuple order whatever the worker count. With fail_fast the records end
  /// at the first violation. CapacityError if the grid exceeds the tables.
  GridReport run_grid(const GridSpec& grid, unsigned workers = 1, bool fail_fast = false) const;

  /// The filtered sum a theorem bounds, evaluated at params.
  ExactInt claim_sum(TheoremId id, const ClaimParams& params) const;

 private:
  const TriangleSet& tables_;
};

}  // namespace clab
