#include "clab/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace clab {

using nlohmann::json;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

bool uses(TheoremId id, std::string_view name) {
  for (auto n : parameter_names(id)) {
    if (n == name) return true;
  }
  return false;
}

json decimal_list(const std::vector<ExactInt>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_decimal(v));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template <class T>
std::string opt_text(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

json grid_to_json(const GridSpec& g) {
  const TheoremId id = g.theorem;
  json out = {{"theorem_id", theorem_name(id)}, {"n", g.n}, {"p", g.primes}};
  if (uses(id, "alpha")) out["alpha"] = g.alpha;
  if (uses(id, "beta")) out["beta"] = g.beta;
  if (uses(id, "l")) out["l"] = g.l;
  if (uses(id, "m")) out["m"] = g.m;
  if (uses(id, "a")) {
    if (g.a_p_steps.empty()) out["a"] = decimal_list(g.a);
    else out["a_one_plus_multiples_of_p"] = g.a_p_steps;
  }
  if (uses(id, "f")) {
    json polys = json::array();
    for (const auto& f : g.polys) polys.push_back(f.to_coefficient_list());
    out["f"] = polys;
  }
  if (g.residues == ResiduePolicy::All) out["r"] = "all";
  else out["r"] = g.residue_list;
  out["evaluate_outside_hypotheses"] = g.evaluate_outside_hypotheses;
  return out;
}

json params_to_json(TheoremId id, const ClaimParams& c) {
  json out = json::object();
  auto put = [&](const char* name, const std::optional<std::int64_t>& v) {
    if (uses(id, name) && v) out[name] = *v;
  };
  put("n", c.n);
  put("p", c.p);
  put("alpha", c.alpha);
  put("beta", c.beta);
  put("l", c.l);
  put("m", c.m);
  put("r", c.r);
  if (uses(id, "a") && c.a) out["a"] = to_decimal(*c.a);
  if (uses(id, "f") && c.f) out["f"] = c.f->to_coefficient_list();
  return out;
}

json record_to_json(const ClaimRecord& rec) {
  json out = {{"theorem", theorem_name(rec.theorem)},
              {"params", params_to_json(rec.theorem, rec.params)},
              {"verdict", verdict_name(rec.verdict)}};
  out["sum"] = rec.sum ? json(to_decimal(*rec.sum)) : json(nullptr);
  if (!rec.ord) out["ord"] = nullptr;
  else if (rec.ord->is_infinite()) out["ord"] = "inf";
  else out["ord"] = rec.ord->value();
  if (rec.theorem == TheoremId::SC2) {
    out["bound"] = "sc2";
  } else {
    out["bound"] = rec.bound ? json(*rec.bound) : json(nullptr);
  }
  out["margin"] = rec.margin ? json(*rec.margin) : json(nullptr);
  if (rec.sc2) {
    out["sc2"] = {{"l", rec.sc2->l},
                  {"lhs", rec.sc2->lhs ? json(to_decimal(*rec.sc2->lhs)) : json(nullptr)},
                  {"rhs", to_decimal(rec.sc2->rhs)}};
  }
  if (!rec.note.empty()) out["note"] = rec.note;
  return out;
}

json summary_to_json(const GridSummary& s, std::span<const ClaimRecord> records) {
  json counts = json::object();
  for (Verdict v : kAllVerdicts) counts[std::string(verdict_name(v))] = s.count(v);
  json out = {{"total", s.total}, {"counts", counts}};
  out["min_margin"] = s.min_margin ? json(*s.min_margin) : json(nullptr);
  out["first_violation"] = s.first_violation ? record_to_json(records[*s.first_violation]) : json(nullptr);
  return out;
}

json report_to_json(const GridReport& report, const RunInfo& info) {
  json records = json::array();
  for (const auto& rec : report.records) records.push_back(record_to_json(rec));
  json run = {{"theorem_id", theorem_name(report.grid.theorem)},
              {"grid", grid_to_json(report.grid)},
              {"tool_version", info.tool_version}};
  run["timestamp"] = info.timestamp ? json(*info.timestamp) : json(nullptr);
  return {{"run", run}, {"records", records}, {"summary", summary_to_json(report.summary, report.records)}};
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_csv(const GridReport& report) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& rec : report.records) {
    const auto& c = rec.params;
    const TheoremId id = rec.theorem;
    auto field = [&](const char* name, const std::optional<std::int64_t>& v) {
      return uses(id, name) ? opt_text(v) : std::string();
    };
    std::string ord = rec.ord ? rec.ord->to_string() : "";
    std::string bound = id == TheoremId::SC2 ? "sc2" : opt_text(rec.bound);
    std::string a = uses(id, "a") && c.a ? to_decimal(*c.a) : "";
    std::string f = uses(id, "f") && c.f ? c.f->to_coefficient_list() : "";
    std::string sc2_l, sc2_lhs, sc2_rhs;
    if (rec.sc2) {
      sc2_l = std::to_string(rec.sc2->l);
      sc2_lhs = rec.sc2->lhs ? to_decimal(*rec.sc2->lhs) : "";
      sc2_rhs = to_decimal(rec.sc2->rhs);
    }
    const std::string fields[] = {std::string(theorem_name(id)),
                                  field("n", c.n),
                                  field("p", c.p),
                                  field("alpha", c.alpha),
                                  field("beta", c.beta),
                                  field("l", c.l),
                                  field("m", c.m),
                                  a,
                                  f,
                                  field("r", c.r),
                                  rec.sum ? to_decimal(*rec.sum) : "",
                                  ord,
                                  bound,
                                  std::string(verdict_name(rec.verdict)),
                                  opt_text(rec.margin),
                                  sc2_l,
                                  sc2_lhs,
                                  sc2_rhs,
                                  rec.note};
    bool first = true;
    for (const auto& v : fields) {
      if (!first) out << ',';
      first = false;
      out << csv_field(v);
    }
    out << '\n';
  }
  return out.str();
}

json identity_to_json(const IdentityCheckResult& r) {
  auto to_obj = [](const IdentityParams& params) {
    json obj = json::object();
    for (const auto& [k, v] : params) obj[k] = v;
    return obj;
  };
  json out = {{"identity", identity_name(r.id)},
              {"params", to_obj(r.params)},
              {"pass", r.pass},
              {"checked", r.checked}};
  out["witness"] = r.witness ? to_obj(*r.witness) : json(nullptr);
  return out;
}

json identity_report_to_json(std::span<const IdentityCheckResult> results, const RunInfo& info) {
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    list.push_back(identity_to_json(r));
    if (r.pass) ++passed;
  }
  json run = {{"command", "identity"}, {"tool_version", info.tool_version}};
  run["timestamp"] = info.timestamp ? json(*info.timestamp) : json(nullptr);
  return {{"run", run},
          {"results", list},
          {"summary", {{"passed", passed}, {"failed", results.size() - passed}}}};
}

std::string render_identity_csv(std::span<const IdentityCheckResult> results) {
  std::ostringstream out;
  out << "identity,pass,checked,params,witness\n";
  auto flat = [](const IdentityParams& params) {
    std::string s;
    for (const auto& [k, v] : params) {
      if (!s.empty()) s += ';';
      s += k + "=" + v;
    }
    return s;
  };
  for (const auto& r : results) {
    out << identity_name(r.id) << ',' << (r.pass ? "true" : "false") << ',' << r.checked << ','
        << csv_field(flat(r.params)) << ',' << csv_field(r.witness ? flat(*r.witness) : "") << '\n';
  }
  return out.str();
}

}  // namespace clab
