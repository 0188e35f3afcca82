#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "clab/report.hpp"
#include "cli.hpp"

using namespace clab;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "congruence-lab");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string field(const json& params, const char* key) {
  if (!params.contains(key)) return "";
  const auto& v = params[key];
  return v.is_string() ? v.get<std::string>() : v.dump();
}

using Row = std::vector<std::string>;

std::multiset<Row> json_rows(const json& doc) {
  std::multiset<Row> rows;
  for (const auto& rec : doc["records"]) {
    const auto& p = rec["params"];
    rows.insert({rec["theorem"].get<std::string>(), field(p, "n"), field(p, "p"), field(p, "alpha"),
                 field(p, "beta"), field(p, "l"), field(p, "m"), field(p, "a"), field(p, "f"), field(p, "r"),
                 rec["sum"].is_null() ? "" : rec["sum"].get<std::string>(), rec["verdict"].get<std::string>()});
  }
  return rows;
}

std::multiset<Row> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  const auto header = split_csv(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  std::multiset<Row> rows;
  while (std::getline(in, line)) {
    const auto f = split_csv(line);
    REQUIRE(f.size() == header.size());
    Row row;
    for (const char* key : {"theorem", "n", "p", "alpha", "beta", "l", "m", "a", "f", "r", "sum", "verdict"})
      row.push_back(f[col.at(key)]);
    rows.insert(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("range lists") {
  CHECK(cli::parse_int_list("1..4") == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(cli::parse_int_list("2,3,5") == std::vector<std::int64_t>{2, 3, 5});
  CHECK(cli::parse_int_list("1..3,7") == std::vector<std::int64_t>{1, 2, 3, 7});
  CHECK(cli::parse_int_list("-2..1") == std::vector<std::int64_t>{-2, -1, 0, 1});
  CHECK_THROWS_AS(cli::parse_int_list("3..1"), ParameterError);
  CHECK_THROWS_AS(cli::parse_int_list("1..x"), ParameterError);
  CHECK_THROWS_AS(cli::parse_int_list(""), ParameterError);
}

TEST_CASE("triangle command") {
  auto r = run({"triangle", "eulerian", "--n-max", "4"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.ends_with("\n1 11 11 1\n"));
  r = run({"triangle", "stirling1", "--n-max", "4"});
  CHECK(r.out.ends_with("\n0 6 11 6 1\n"));
  r = run({"triangle", "stirling2", "--n-max", "0"});
  CHECK(r.out.ends_with("\n1\n"));
  CHECK(run({"triangle", "bell", "--n-max", "3"}).code == cli::kUsage);
  CHECK(run({"triangle", "stirling2", "--n-max", "500"}).code == cli::kCapacity);
}

TEST_CASE("sum command") {
  CHECK(run({"sum", "fleck", "--n", "3", "--p", "2", "--alpha", "1", "--r", "0", "--l", "0"}).out ==
        "4 / ord_2 = 2\n");
  CHECK(run({"sum", "cdr", "--n", "4", "--m", "2", "--d", "2", "--r", "0", "--a", "1", "--p", "3"}).out ==
        "18 / ord_3 = 2\n");
  CHECK(run({"sum", "stirling-poly", "--n", "3", "--f", "0,1", "--d", "2", "--r", "1"}).out == "5\n");
  const auto empty = run({"sum", "fleck", "--n", "2", "--p", "5", "--r", "4"});
  CHECK(empty.code == cli::kOk);
  CHECK(empty.out == "0 / ord_5 = inf\n");
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "fleck", "--p", "2,3", "--n", "1..30", "--r", "all"}).code == cli::kOk);
  const auto na = run({"verify", "ec2", "--n", "1", "--p", "2", "--alpha", "1"});
  CHECK(na.code == cli::kOk);
  const json doc = json::parse(na.out);
  CHECK(doc["summary"]["total"] == doc["summary"]["counts"]["NOT-APPLICABLE"]);
  CHECK(run({"verify", "fleck", "--n", "1..3"}).code == cli::kUsage);
  CHECK(run({"verify", "fleck", "--p", "2", "--n", "1..x"}).code == cli::kUsage);
  CHECK(run({"verify", "fermat", "--p", "2", "--n", "3"}).code == cli::kUsage);
  CHECK(run({"verify", "fleck", "--p", "4", "--n", "3"}).code == cli::kUsage);
  CHECK(run({"verify", "ec1", "--p", "2", "--n", "1..300"}).code == cli::kCapacity);
  CHECK(run({"verify", "ec1", "--p", "2", "--n", "1..300", "--max-n", "300"}).code == cli::kOk);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
}

TEST_CASE("identity command") {
  CHECK(run({"identity", "E2", "--n", "1..12"}).code == cli::kOk);
  CHECK(run({"identity", "scl3e", "--p", "3", "--alpha", "1"}).code == cli::kOk);
  const auto all = run({"identity", "all", "--no-timestamp"});
  CHECK(all.code == cli::kOk);
  const json doc = json::parse(all.out);
  CHECK(doc["summary"]["passed"] == 8);
  CHECK(doc["summary"]["failed"] == 0);
  CHECK(run({"identity", "E7"}).code == cli::kUsage);
}

TEST_CASE("reports are deterministic and round-trip") {
  const std::vector<std::string> args{"verify", "sc3", "--p", "2,3", "--alpha", "1,2", "--n", "1..20",
                                      "--m", "1..3", "--a", "-2..3", "--no-timestamp"};
  auto with_workers = [&](const char* w) {
    auto a = args;
    a.insert(a.end(), {"--workers", w});
    return run(a);
  };
  const auto one = with_workers("1");
  const auto four = with_workers("4");
  REQUIRE(one.code == cli::kOk);
  CHECK(one.out == four.out);
  CHECK(one.out == with_workers("1").out);
  const json doc = json::parse(one.out);
  CHECK(doc["run"]["timestamp"].is_null());
  CHECK(doc.dump(2) + "\n" == one.out);

  auto stamped = args;
  stamped.pop_back();
  CHECK(json::parse(run(stamped).out)["run"]["timestamp"].is_string());
}

TEST_CASE("csv and json carry the same records") {
  const std::vector<std::string> base{"verify", "sc2", "--p", "2,3,5", "--n", "1..8", "--f", "0,-1,0,3",
                                      "--f", "1,1,1", "--a", "-1..1", "--no-timestamp"};
  auto as_json = base;
  auto as_csv = base;
  as_csv.insert(as_csv.end(), {"--format", "csv"});
  const auto j = run(as_json);
  const auto c = run(as_csv);
  REQUIRE(j.code == cli::kOk);
  REQUIRE(c.code == cli::kOk);
  CHECK(c.out.starts_with(std::string(kCsvHeader) + "\n"));
  const auto rows = json_rows(json::parse(j.out));
  CHECK(rows.size() > 0);
  CHECK(rows == csv_rows(c.out));

  const auto fleck = run({"verify", "fleck", "--p", "2,7", "--n", "1..9", "--no-timestamp"});
  const auto fleck_csv = run({"verify", "fleck", "--p", "2,7", "--n", "1..9", "--format", "csv"});
  CHECK(json_rows(json::parse(fleck.out)) == csv_rows(fleck_csv.out));
}

TEST_CASE("output file and cache directory") {
  const auto dir = std::filesystem::temp_directory_path() / "clab_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto report = (dir / "report.json").string();
  const auto cache = (dir / "cache").string();

  const auto r = run({"verify", "ec1", "--p", "2", "--n", "1..10", "--out", report, "--cache-dir", cache,
                      "--no-timestamp"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("EC1") != std::string::npos);  // summary line
  std::ifstream in(report);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(json::parse(text.str())["run"]["theorem_id"] == "EC1");
  CHECK(!std::filesystem::is_empty(cache));

  const auto env_cache = dir / "env";
  ::setenv("CONGRUENCE_LAB_CACHE", env_cache.c_str(), 1);
  CHECK(run({"verify", "ec1", "--p", "2", "--n", "1..5"}).code == cli::kOk);
  ::unsetenv("CONGRUENCE_LAB_CACHE");
  CHECK(std::filesystem::exists(env_cache));
  CHECK(!std::filesystem::is_empty(env_cache));
  std::filesystem::remove_all(dir);
}
