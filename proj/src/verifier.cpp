#include "clab/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace clab {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::HoldsVacuous: return "HOLDS-VACUOUS";
    case Verdict::HoldsTrivialBound: return "HOLDS-TRIVIAL-BOUND";
    case Verdict::Tight: return "TIGHT";
    case Verdict::Violation: return "VIOLATION";
    case Verdict::NotApplicable: return "NOT-APPLICABLE";
  }
  return "UNKNOWN";
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : kAllVerdicts) {
    if (verdict_name(v) == text) return v;
  }
  throw ParameterError("unknown verdict '" + std::string(text) + "'");
}

namespace {

using namespace std::string_view_literals;

constexpr std::array kFleckNames{"p"sv, "n"sv, "r"sv};
constexpr std::array kWeismanNames{"p"sv, "alpha"sv, "n"sv, "r"sv};
constexpr std::array kWanNames{"p"sv, "l"sv, "n"sv, "r"sv};
constexpr std::array kSunNames{"p"sv, "alpha"sv, "beta"sv, "l"sv, "n"sv, "r"sv};
constexpr std::array kWeightedNames{"p"sv, "alpha"sv, "l"sv, "n"sv, "r"sv};
constexpr std::array kPowerNames{"p"sv, "alpha"sv, "n"sv, "a"sv, "r"sv};
constexpr std::array kSc1Names{"p"sv, "n"sv, "m"sv, "a"sv, "r"sv};
constexpr std::array kSc2Names{"p"sv, "n"sv, "f"sv, "a"sv, "r"sv};
constexpr std::array kSc3Names{"p"sv, "alpha"sv, "n"sv, "m"sv, "a"sv, "r"sv};

template <class T>
const T& need(const std::optional<T>& value, std::string_view name, TheoremId id) {
  if (!value) {
    throw ParameterError(std::string(theorem_name(id)) + " needs parameter '" + std::string(name) + "'");
  }
  return *value;
}

bool uses(TheoremId id, std::string_view name) {
  auto names = parameter_names(id);
  return std::find(names.begin(), names.end(), name) != names.end();
}

BoundSpec bound_spec(TheoremId id, const ClaimParams& c) {
  BoundSpec s;
  s.theorem = id;
  s.n = need(c.n, "n", id);
  s.p = need(c.p, "p", id);
  if (uses(id, "alpha")) s.alpha = need(c.alpha, "alpha", id);
  if (uses(id, "beta")) s.beta = need(c.beta, "beta", id);
  if (uses(id, "l")) s.l = need(c.l, "l", id);
  if (uses(id, "m")) s.m = need(c.m, "m", id);
  if (uses(id, "a")) s.a = need(c.a, "a", id);
  return s;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::span<const std::string_view> parameter_names(TheoremId id) {
  switch (id) {
    case TheoremId::Fleck: return kFleckNames;
    case TheoremId::Weisman: return kWeismanNames;
    case TheoremId::Wan: return kWanNames;
    case TheoremId::Sun: return kSunNames;
    case TheoremId::WanImproved:
    case TheoremId::DavisSun6:
    case TheoremId::DavisSun7:
    case TheoremId::EC1: return kWeightedNames;
    case TheoremId::EC2:
    case TheoremId::SunPowerInferred: return kPowerNames;
    case TheoremId::SC1: return kSc1Names;
    case TheoremId::SC2: return kSc2Names;
    case TheoremId::SC3: return kSc3Names;
  }
  return {};
}

std::int64_t claim_modulus(TheoremId id, const ClaimParams& c) {
  const std::int64_t p = need(c.p, "p", id);
  auto p_to = [&](std::int64_t e) {
    if (e < 0) throw ParameterError("negative exponent in modulus");
    return int_pow(p, static_cast<std::uint64_t>(e));
  };
  switch (id) {
    case TheoremId::Fleck:
    case TheoremId::Wan: return p;
    case TheoremId::Sun: return p_to(need(c.beta, "beta", id));
    case TheoremId::Weisman:
    case TheoremId::WanImproved:
    case TheoremId::DavisSun6:
    case TheoremId::DavisSun7:
    case TheoremId::EC1:
    case TheoremId::EC2:
    case TheoremId::SunPowerInferred: return p_to(need(c.alpha, "alpha", id));
    case TheoremId::SC1:
    case TheoremId::SC2: return p - 1;
    case TheoremId::SC3: return p_to(need(c.alpha, "alpha", id)) * (p - 1);
  }
  throw ParameterError("unknown theorem");
}

ExactInt Verifier::claim_sum(TheoremId id, const ClaimParams& c) const {
  const std::int64_t n = need(c.n, "n", id);
  const std::int64_t p = need(c.p, "p", id);
  const ResidueClass cls(claim_modulus(id, c), need(c.r, "r", id));
  switch (id) {
    case TheoremId::Fleck:
      return fleck_sum(n, p, 1, cls, 0);
    case TheoremId::Weisman:
      return fleck_sum(n, p, need(c.alpha, "alpha", id), cls, 0);
    case TheoremId::Wan:
      return fleck_sum(n, p, 1, cls, need(c.l, "l", id));
    case TheoremId::Sun:
      return fleck_sum(n, p, need(c.alpha, "alpha", id), cls, need(c.l, "l", id), FleckVariant::Floor,
                       need(c.beta, "beta", id));
    case TheoremId::WanImproved:
    case TheoremId::DavisSun6:
    case TheoremId::DavisSun7:
      return fleck_sum(n, p, need(c.alpha, "alpha", id), cls, need(c.l, "l", id));
    case TheoremId::EC1:
      return eulerian_wan_sum(tables_, n, p, need(c.alpha, "alpha", id), cls, need(c.l, "l", id));
    case TheoremId::EC2:
      return eulerian_power_sum(tables_, n, p, need(c.alpha, "alpha", id), cls, need(c.a, "a", id));
    case TheoremId::SunPowerInferred:
      return binom_power_sum(n, p, need(c.alpha, "alpha", id), cls, need(c.a, "a", id));
    case TheoremId::SC1:
    case TheoremId::SC3:
      return stirling_product_sum(tables_, n, need(c.m, "m", id), cls, need(c.a, "a", id));
    case TheoremId::SC2:
      return stirling_poly_sum(tables_, n, need(c.f, "f", id), cls, need(c.a, "a", id));
  }
  throw ParameterError("unknown theorem");
}

ClaimRecord Verifier::check_claim(TheoremId id, const ClaimParams& params,
                                  bool evaluate_outside_hypotheses) const {
  ClaimRecord rec;
  rec.theorem = id;
  rec.params = params;
  const BoundSpec spec = bound_spec(id, params);
  need(params.r, "r", id);
  if (id == TheoremId::SC2) need(params.f, "f", id);

  const auto violation = hypothesis_violation(spec);
  if (violation) {
    rec.verdict = Verdict::NotApplicable;
    rec.note = *violation;
    if (!evaluate_outside_hypotheses) return rec;
    try {
      rec.sum = claim_sum(id, params);
    } catch (const ParameterError&) {
      return rec;
    }
  } else {
    rec.sum = claim_sum(id, params);
  }

  rec.ord = ord_p(*rec.sum, spec.p);
  const bool vacuous = *rec.sum == 0;
  Verdict verdict;
  if (id == TheoremId::SC2) {
    rec.sc2 = sc2_compare(spec.n, spec.p, *params.f, *rec.sum);
    if (vacuous) verdict = Verdict::HoldsVacuous;
    else if (!rec.sc2->holds) verdict = Verdict::Violation;
    else if (rec.sc2->trivial) verdict = Verdict::HoldsTrivialBound;
    else verdict = Verdict::Holds;
  } else {
    rec.bound = bound_exponent(spec);
    if (vacuous) {
      verdict = Verdict::HoldsVacuous;
    } else {
      rec.margin = static_cast<std::int64_t>(rec.ord->value()) - *rec.bound;
      if (*rec.margin < 0) verdict = Verdict::Violation;
      else if (*rec.bound < 0) verdict = Verdict::HoldsTrivialBound;
      else if (*rec.margin == 0) verdict = Verdict::Tight;
      else verdict = Verdict::Holds;
    }
  }
  if (!violation) rec.verdict = verdict;
  return rec;
}

void validate_grid(const GridSpec& g) {
  const TheoremId id = g.theorem;
  auto nonempty = [&](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string(theorem_name(id)) + " grid has an empty " + what + " range");
  };
  auto nonneg = [&](const std::vector<std::int64_t>& v, const char* what) {
    for (auto x : v) {
      if (x < 0) throw ParameterError(std::string(what) + " values must be nonnegative");
    }
  };
  nonempty(!g.n.empty(), "n");
  nonempty(!g.primes.empty(), "p");
  for (auto p : g.primes) require_prime(p);
  nonneg(g.n, "n");
  if (uses(id, "alpha")) { nonempty(!g.alpha.empty(), "alpha"); nonneg(g.alpha, "alpha"); }
  if (uses(id, "beta")) { nonempty(!g.beta.empty(), "beta"); nonneg(g.beta, "beta"); }
  if (uses(id, "l")) { nonempty(!g.l.empty(), "l"); nonneg(g.l, "l"); }
  if (uses(id, "m")) { nonempty(!g.m.empty(), "m"); nonneg(g.m, "m"); }
  if (uses(id, "a")) nonempty(!g.a.empty() || !g.a_p_steps.empty(), "a");
  if (uses(id, "f")) nonempty(!g.polys.empty(), "polynomial");
  if (g.residues == ResiduePolicy::List) nonempty(!g.residue_list.empty(), "residue");
}

std::int64_t grid_max_n(const GridSpec& grid) {
  return grid.n.empty() ? 0 : *std::max_element(grid.n.begin(), grid.n.end());
}

std::vector<ClaimParams> enumerate_tuples(const GridSpec& g) {
  validate_grid(g);
  const TheoremId id = g.theorem;
  using Opt = std::optional<std::int64_t>;
  auto axis = [&](std::string_view name, const std::vector<std::int64_t>& values) {
    std::vector<Opt> out;
    if (!uses(id, name)) return std::vector<Opt>{std::nullopt};
    for (auto v : sorted_unique(values)) out.emplace_back(v);
    return out;
  };
  const auto ns = sorted_unique(g.n);
  const auto residues = sorted_unique(g.residue_list);

  std::vector<ClaimParams> tuples;
  ClaimParams c;
  for (auto p : sorted_unique(g.primes)) {
    c.p = p;
    std::vector<std::optional<ExactInt>> as{std::nullopt};
    if (uses(id, "a")) {
      std::vector<ExactInt> values;
      if (!g.a_p_steps.empty()) {
        for (auto t : g.a_p_steps) values.emplace_back(ExactInt(1) + ExactInt(t) * p);
      } else {
        values = g.a;
      }
      values = sorted_unique(std::move(values));
      as.assign(values.begin(), values.end());
    }
    for (auto alpha : axis("alpha", g.alpha)) {
      c.alpha = alpha;
      for (auto beta : axis("beta", g.beta)) {
        c.beta = beta;
        for (auto l : axis("l", g.l)) {
          c.l = l;
          for (auto n : ns) {
            c.n = n;
            for (auto m : axis("m", g.m)) {
              if (m && *m > n) continue;
              c.m = m;
              const std::size_t poly_count = uses(id, "f") ? g.polys.size() : 1;
              for (std::size_t fi = 0; fi < poly_count; ++fi) {
                c.f = uses(id, "f") ? std::optional<IntPolynomial>(g.polys[fi]) : std::nullopt;
                for (const auto& a : as) {
                  c.a = a;
                  if (g.residues == ResiduePolicy::All) {
                    const std::int64_t d = claim_modulus(id, c);
                    for (std::int64_t r = 0; r < d; ++r) {
                      c.r = r;
                      tuples.push_back(c);
                    }
                  } else {
                    for (auto r : residues) {
                      c.r = r;
                      tuples.push_back(c);
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return tuples;
}

GridSummary summarize(std::span<const ClaimRecord> records) {
  GridSummary s;
  s.total = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    ++s.counts[static_cast<std::size_t>(rec.verdict)];
    if (rec.verdict == Verdict::Violation && !s.first_violation) s.first_violation = i;
    if (rec.verdict != Verdict::NotApplicable && rec.margin) {
      s.min_margin = s.min_margin ? std::min(*s.min_margin, *rec.margin) : *rec.margin;
    }
  }
  return s;
}

GridReport Verifier::run_grid(const GridSpec& grid, unsigned workers, bool fail_fast) const {
  GridReport report;
  report.grid = grid;
  auto tuples = enumerate_tuples(grid);
  const auto max_n = grid_max_n(grid);
  if (static_cast<std::uint64_t>(max_n) > tables_.max_n()) {
    throw CapacityError("grid needs n up to " + std::to_string(max_n) + " but tables stop at " +
                        std::to_string(tables_.max_n()));
  }

  std::vector<ClaimRecord> records(tuples.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_bad{tuples.size()};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::size_t i = next++; i < tuples.size(); i = next++) {
        if (fail_fast && i > first_bad.load()) continue;
        records[i] = check_claim(grid.theorem, tuples[i], grid.evaluate_outside_hypotheses);
        if (fail_fast && records[i].verdict == Verdict::Violation) {
          std::size_t seen = first_bad.load();
          while (i < seen && !first_bad.compare_exchange_weak(seen, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = tuples.size();
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  if (fail_fast && first_bad.load() < records.size()) records.resize(first_bad.load() + 1);
  report.records = std::move(records);
  report.summary = summarize(report.records);
  return report;
}

}  // namespace clab
