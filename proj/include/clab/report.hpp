#pragma once

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "clab/identities.hpp"
#include "clab/verifier.hpp"

namespace clab {

struct RunInfo {
  std::string tool_version;
  std::optional<std::string> timestamp;  // omitted (null) for reproducible output
};

/// Current UTC time as ISO-8601.
std::string utc_timestamp();

nlohmann::json grid_to_json(const GridSpec& grid);
nlohmann::json params_to_json(TheoremId id, const ClaimParams& params);
nlohmann::json record_to_json(const ClaimRecord& record);
nlohmann::json summary_to_json(const GridSummary& summary, std::span<const ClaimRecord> records);

/// {run: {theorem_id, grid, timestamp, tool_version}, records: [...], summary: {...}}.
/// Big integers are decimal strings; object keys are sorted.
nlohmann::json report_to_json(const GridReport& report, const RunInfo& info);

/// Canonical text: two-space indentation, trailing newline.
std::string render_json(const nlohmann::json& doc);

/// One header line then one line per record; fields containing commas
/// or quotes are quoted.
std::string render_csv(const GridReport& report);
inline constexpr const char* kCsvHeader =
    "theorem,n,p,alpha,beta,l,m,a,f,r,sum,ord,bound,verdict,margin,sc2_l,sc2_lhs,sc2_rhs,note";

nlohmann::json identity_to_json(const IdentityCheckResult& result);
nlohmann::json identity_report_to_json(std::span<const IdentityCheckResult> results, const RunInfo& info);
std::string render_identity_csv(std::span<const IdentityCheckResult> results);

}  // namespace clab
