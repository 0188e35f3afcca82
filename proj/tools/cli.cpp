#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "clab/bounds.hpp"
#include "clab/filtered_sums.hpp"
#include "clab/identities.hpp"
#include "clab/report.hpp"
#include "clab/triangles.hpp"
#include "clab/verifier.hpp"
#include "clab/version.hpp"

namespace clab::cli {

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

constexpr std::int64_t kMaxRangeLength = 10'000'000;

}  // namespace

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.empty()) throw ParameterError("empty list");
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == text.npos ? text.npos : comma - start);
    // Search for ".." after the first character so a leading minus sign is kept.
    std::size_t dots = item.find("..", 1);
    if (dots != item.npos) {
      const std::int64_t lo = parse_int(item.substr(0, dots));
      const std::int64_t hi = parse_int(item.substr(dots + 2));
      if (hi < lo) throw ParameterError("empty range '" + std::string(item) + "'");
      if (hi - lo >= kMaxRangeLength) throw ParameterError("range too long '" + std::string(item) + "'");
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_int(item));
    }
    if (comma == text.npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

struct CommonOptions {
  std::string out_path;
  std::string format = "json";
  std::string cache_dir;
  bool no_timestamp = false;
  std::int64_t max_n = 200;
};

std::optional<std::filesystem::path> resolve_cache_dir(const CommonOptions& o) {
  if (!o.cache_dir.empty()) return std::filesystem::path(o.cache_dir);
  if (const char* env = std::getenv("CONGRUENCE_LAB_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

RunInfo run_info(const CommonOptions& o) {
  return {kToolVersion, o.no_timestamp ? std::nullopt : std::optional<std::string>(utc_timestamp())};
}

std::uint64_t checked_rows(std::int64_t needed, const CommonOptions& o) {
  if (needed > o.max_n) {
    throw CapacityError("n = " + std::to_string(needed) + " exceeds the row limit " + std::to_string(o.max_n) +
                        " (raise --max-n)");
  }
  return static_cast<std::uint64_t>(std::max<std::int64_t>(needed, 0));
}

// --- sum ------------------------------------------------------------------------

struct SumOptions {
  std::string kind;
  std::int64_t n = 0;
  std::optional<std::int64_t> p;
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  std::int64_t l = 0;
  std::int64_t m = 1;
  std::optional<std::int64_t> d;
  std::int64_t r = 0;
  std::string a = "1";
  std::string f = "1";
};

int run_sum(const SumOptions& s, const CommonOptions& common, std::ostream& out) {
  ExactInt a;
  if (a.set_str(s.a, 10) != 0) throw ParameterError("bad integer for --a: '" + s.a + "'");
  auto need_p = [&]() -> std::int64_t {
    if (!s.p) throw ParameterError("sum " + s.kind + " needs --p");
    return *s.p;
  };
  auto p_pow = [&](std::int64_t e) { return int_pow(need_p(), static_cast<std::uint64_t>(e)); };
  auto need_d = [&]() -> std::int64_t {
    if (!s.d) throw ParameterError("sum " + s.kind + " needs --d");
    return *s.d;
  };

  ExactInt value;
  const bool needs_tables = s.kind == "eulerian-wan" || s.kind == "eulerian-power" || s.kind == "cdr" ||
                            s.kind == "stirling-poly";
  std::optional<TriangleSet> tables;
  if (needs_tables) tables.emplace(checked_rows(s.n, common), resolve_cache_dir(common));

  if (s.kind == "fleck") {
    value = fleck_sum(s.n, need_p(), s.alpha, ResidueClass(p_pow(s.alpha), s.r), s.l);
  } else if (s.kind == "fleck-floor") {
    value = fleck_sum(s.n, need_p(), s.alpha, ResidueClass(p_pow(s.beta), s.r), s.l, FleckVariant::Floor, s.beta);
  } else if (s.kind == "binom-power") {
    value = binom_power_sum(s.n, need_p(), s.alpha, ResidueClass(p_pow(s.alpha), s.r), a);
  } else if (s.kind == "eulerian-wan") {
    value = eulerian_wan_sum(*tables, s.n, need_p(), s.alpha, ResidueClass(p_pow(s.alpha), s.r), s.l);
  } else if (s.kind == "eulerian-power") {
    value = eulerian_power_sum(*tables, s.n, need_p(), s.alpha, ResidueClass(p_pow(s.alpha), s.r), a);
  } else if (s.kind == "cdr") {
    value = stirling_product_sum(*tables, s.n, s.m, ResidueClass(need_d(), s.r), a);
  } else if (s.kind == "stirling-poly") {
    value = stirling_poly_sum(*tables, s.n, IntPolynomial::parse(s.f), ResidueClass(need_d(), s.r), a);
  } else {
    throw ParameterError("unknown sum kind '" + s.kind + "'");
  }

  out << to_decimal(value);
  if (s.p) out << " / ord_" << *s.p << " = " << ord_p(value, *s.p).to_string();
  out << '\n';
  return kOk;
}

// --- verify ---------------------------------------------------------------------

struct VerifyOptions {
  std::string theorem;
  std::string n, p, alpha = "1", beta = "0", l = "0", m = "1", a = "1", a_step, r = "all";
  std::vector<std::string> f;
  unsigned workers = 0;
  bool fail_fast = false;
  bool outside = false;
};

GridSpec build_grid(const VerifyOptions& v) {
  GridSpec g;
  g.theorem = parse_theorem_id(v.theorem);
  if (v.n.empty()) throw ParameterError("verify needs --n");
  if (v.p.empty()) throw ParameterError("verify needs --p");
  g.n = parse_int_list(v.n);
  g.primes = parse_int_list(v.p);
  g.alpha = parse_int_list(v.alpha);
  g.beta = parse_int_list(v.beta);
  g.l = parse_int_list(v.l);
  g.m = parse_int_list(v.m);
  g.a.clear();
  for (auto x : parse_int_list(v.a)) g.a.emplace_back(x);
  if (!v.a_step.empty()) g.a_p_steps = parse_int_list(v.a_step);
  if (v.r == "all") {
    g.residues = ResiduePolicy::All;
  } else {
    g.residues = ResiduePolicy::List;
    g.residue_list = parse_int_list(v.r);
  }
  for (const auto& text : v.f) g.polys.push_back(IntPolynomial::parse(text));
  if (g.theorem == TheoremId::SC2 && g.polys.empty()) g.polys.push_back(IntPolynomial{1});
  g.evaluate_outside_hypotheses = v.outside;
  return g;
}

int run_verify(const VerifyOptions& v, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  const GridSpec grid = build_grid(v);
  validate_grid(grid);
  const TriangleSet tables(checked_rows(grid_max_n(grid), common), resolve_cache_dir(common));
  const Verifier verifier(tables);
  const unsigned workers = v.workers ? v.workers : std::max(1u, std::thread::hardware_concurrency());
  const GridReport report = verifier.run_grid(grid, workers, v.fail_fast);

  std::string text;
  if (common.format == "json") text = render_json(report_to_json(report, run_info(common)));
  else if (common.format == "csv") text = render_csv(report);
  else throw ParameterError("unknown --format '" + common.format + "'");
  emit(text, common.out_path, out);

  std::ostream& note = common.out_path.empty() ? err : out;
  note << theorem_name(grid.theorem) << ": " << report.summary.total << " tuples";
  for (Verdict verdict : kAllVerdicts) {
    if (auto c = report.summary.count(verdict)) note << ", " << verdict_name(verdict) << " " << c;
  }
  if (report.summary.min_margin) note << ", min margin " << *report.summary.min_margin;
  note << '\n';
  return report.summary.count(Verdict::Violation) ? kViolation : kOk;
}

// --- identity -------------------------------------------------------------------

struct IdentityOptions {
  std::string which = "all";
  std::string n, k, l, p, alpha;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> modulus_limit;
};

int run_identity(const IdentityOptions& o, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  std::vector<IdentityId> ids;
  if (o.which == "all") ids.assign(all_identities().begin(), all_identities().end());
  else ids.push_back(parse_identity_id(o.which));

  std::vector<std::pair<IdentityId, IdentityRanges>> plans;
  std::uint64_t rows = 0;
  for (IdentityId id : ids) {
    IdentityRanges r = default_ranges(id);
    if (!o.n.empty()) r.n = parse_int_list(o.n);
    if (!o.k.empty()) r.k = parse_int_list(o.k);
    if (!o.l.empty()) r.l = parse_int_list(o.l);
    if (!o.p.empty()) r.primes = parse_int_list(o.p);
    if (!o.alpha.empty()) r.alpha = parse_int_list(o.alpha);
    if (o.samples) r.samples = *o.samples;
    if (o.seed) r.seed = *o.seed;
    if (o.modulus_limit) r.scl3e_modulus_limit = *o.modulus_limit;
    rows = std::max(rows, identity_max_n(id, r));
    plans.emplace_back(id, std::move(r));
  }
  const TriangleSet tables(checked_rows(static_cast<std::int64_t>(rows), common), resolve_cache_dir(common));

  std::vector<IdentityCheckResult> results;
  for (const auto& [id, r] : plans) results.push_back(run_identity_suite(tables, id, r));

  std::string text;
  if (common.format == "json") text = render_json(identity_report_to_json(results, run_info(common)));
  else if (common.format == "csv") text = render_identity_csv(results);
  else throw ParameterError("unknown --format '" + common.format + "'");
  emit(text, common.out_path, out);

  std::ostream& note = common.out_path.empty() ? err : out;
  bool all_pass = true;
  for (const auto& r : results) {
    note << identity_name(r.id) << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.checked << " checks)\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kOk : kViolation;
}

// --- triangle -------------------------------------------------------------------

int run_triangle(const std::string& family, std::int64_t n_max, const CommonOptions& common, std::ostream& out) {
  if (n_max < 0) throw ParameterError("--n-max must be nonnegative");
  const auto loaded = load_or_build(parse_family(family), checked_rows(n_max, common), resolve_cache_dir(common));
  emit(serialize_triangle(loaded.triangle), common.out_path, out);
  return kOk;
}

void add_common(CLI::App* cmd, CommonOptions& c, bool reports) {
  cmd->add_option("--out,-o", c.out_path, "Output file (default: stdout)");
  cmd->add_option("--cache-dir", c.cache_dir, "Triangle cache directory (overrides CONGRUENCE_LAB_CACHE)");
  cmd->add_option("--max-n", c.max_n, "Largest triangle row allowed")->capture_default_str();
  if (reports) {
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_flag("--no-timestamp", c.no_timestamp, "Omit the run timestamp for reproducible reports");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Stirling/Eulerian congruence laboratory", "congruence-lab"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions common;

  auto* triangle = app.add_subcommand("triangle", "Write a triangle in the cache file format");
  std::string family;
  std::int64_t n_max = 0;
  triangle->add_option("family", family, "stirling1 | stirling2 | eulerian")->required();
  triangle->add_option("--n-max", n_max, "Last row")->required();
  add_common(triangle, common, false);

  auto* sum = app.add_subcommand("sum", "Evaluate one filtered sum and its p-adic order");
  SumOptions s;
  sum->add_option("kind", s.kind,
                  "fleck | fleck-floor | binom-power | eulerian-wan | eulerian-power | cdr | stirling-poly")
      ->required();
  sum->add_option("--n", s.n, "n")->required();
  sum->add_option("--p", s.p, "prime");
  sum->add_option("--alpha", s.alpha, "alpha")->capture_default_str();
  sum->add_option("--beta", s.beta, "beta (fleck-floor)")->capture_default_str();
  sum->add_option("--l", s.l, "l")->capture_default_str();
  sum->add_option("--m", s.m, "m (cdr)")->capture_default_str();
  sum->add_option("--d", s.d, "modulus (cdr, stirling-poly)");
  sum->add_option("--r", s.r, "residue")->capture_default_str();
  sum->add_option("--a", s.a, "integer a")->capture_default_str();
  sum->add_option("--f", s.f, "polynomial coefficients low-to-high, e.g. 0,0,1")->capture_default_str();
  add_common(sum, common, false);

  auto* verify = app.add_subcommand("verify", "Check a congruence over a parameter grid");
  VerifyOptions v;
  verify->add_option("theorem", v.theorem, "fleck | weisman | wan13 | sun14 | wan15 | ds16 | ds17 | ec1 | ec2 | sc1 | sc2 | sc3 | su18")
      ->required();
  verify->add_option("--n", v.n, "n range, e.g. 1..30");
  verify->add_option("--p", v.p, "primes, e.g. 2,3");
  verify->add_option("--alpha", v.alpha, "alpha range")->capture_default_str();
  verify->add_option("--beta", v.beta, "beta range")->capture_default_str();
  verify->add_option("--l", v.l, "l range")->capture_default_str();
  verify->add_option("--m", v.m, "m range (values above n are skipped)")->capture_default_str();
  verify->add_option("--a", v.a, "a values")->capture_default_str();
  verify->add_option("--a-step", v.a_step, "use a = 1 + t*p for each t in this list");
  verify->add_option("--r", v.r, "residues: all | list")->capture_default_str();
  verify->add_option("--f", v.f, "SC2 polynomial, repeatable, e.g. --f 0,0,1");
  verify->add_option("--workers", v.workers, "Worker threads (default: hardware concurrency)");
  verify->add_flag("--fail-fast", v.fail_fast, "Stop at the first violation");
  verify->add_flag("--outside-hypotheses", v.outside,
                   "Also evaluate tuples outside the hypotheses (reported NOT-APPLICABLE)");
  add_common(verify, common, true);

  auto* identity = app.add_subcommand("identity", "Run identity and lemma checks");
  IdentityOptions io;
  identity->add_option("identity", io.which, "E1 | E2 | S3 | SS3 | S4 | SCL3E | L31 | L32 | all")->capture_default_str();
  identity->add_option("--n", io.n, "n range");
  identity->add_option("--k", io.k, "k range");
  identity->add_option("--l", io.l, "l range");
  identity->add_option("--p", io.p, "primes");
  identity->add_option("--alpha", io.alpha, "alpha values");
  identity->add_option("--samples", io.samples, "L31 random samples");
  identity->add_option("--seed", io.seed, "L31 random seed");
  identity->add_option("--modulus-limit", io.modulus_limit, "SCL3E bound on p^alpha(p-1)");
  add_common(identity, common, true);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*triangle) return run_triangle(family, n_max, common, out);
    if (*sum) return run_sum(s, common, out);
    if (*verify) return run_verify(v, common, out, err);
    if (*identity) return run_identity(io, common, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace clab::cli
