#include "clab/triangles.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace clab {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Stirling1: return "stirling1";
    case Family::Stirling2: return "stirling2";
    case Family::Eulerian: return "eulerian";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "stirling1") return Family::Stirling1;
  if (name == "stirling2") return Family::Stirling2;
  if (name == "eulerian") return Family::Eulerian;
  throw ParameterError("unknown triangle family '" + std::string(name) + "'");
}

std::size_t row_length(Family family, std::uint64_t n) {
  if (family == Family::Eulerian) return n == 0 ? 1 : n;
  return n + 1;
}

Triangle Triangle::build(Family family, std::uint64_t max_n) {
  std::vector<std::vector<ExactInt>> rows;
  rows.reserve(max_n + 1);
  rows.push_back({ExactInt(1)});
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const auto& prev = rows.back();
    auto prev_at = [&](std::int64_t k) -> ExactInt {
      if (k < 0 || k >= static_cast<std::int64_t>(prev.size())) return 0;
      return prev[static_cast<std::size_t>(k)];
    };
    std::vector<ExactInt> row(row_length(family, n));
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto sk = static_cast<std::int64_t>(k);
      switch (family) {
        case Family::Stirling1:
          // s(n,k) = s(n-1,k-1) + (n-1) s(n-1,k)
          row[k] = prev_at(sk - 1) + (n - 1) * prev_at(sk);
          break;
        case Family::Stirling2:
          // S(n,k) = S(n-1,k-1) + k S(n-1,k)
          row[k] = prev_at(sk - 1) + k * prev_at(sk);
          break;
        case Family::Eulerian:
          // <n k> = (k+1)<n-1 k> + (n-k)<n-1 k-1>
          row[k] = (k + 1) * prev_at(sk) + (n - k) * prev_at(sk - 1);
          break;
      }
    }
    rows.push_back(std::move(row));
  }
  return Triangle(family, std::move(rows));
}

Triangle Triangle::from_rows(Family family, std::vector<std::vector<ExactInt>> rows) {
  if (auto problem = validate_rows(family, rows)) throw ParameterError(*problem);
  return Triangle(family, std::move(rows));
}

const std::vector<ExactInt>& Triangle::row(std::uint64_t n) const {
  if (n > max_n()) {
    throw CapacityError(std::string(family_name(family_)) + " row " + std::to_string(n) +
                        " exceeds the table limit " + std::to_string(max_n()));
  }
  return rows_[n];
}

const ExactInt& Triangle::at(std::uint64_t n, std::int64_t k) const {
  static const ExactInt zero = 0;
  const auto& r = row(n);
  if (k < 0 || k >= static_cast<std::int64_t>(r.size())) return zero;
  return r[static_cast<std::size_t>(k)];
}

namespace {

ExactInt horner(const std::vector<ExactInt>& coeffs, const ExactInt& x) {
  ExactInt acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::optional<std::string> check_row(Family family, std::uint64_t n, const std::vector<ExactInt>& row) {
  auto fail = [&](const std::string& what) {
    return std::optional<std::string>(std::string(family_name(family)) + " row " + std::to_string(n) +
                                      ": " + what);
  };
  if (row.size() != row_length(family, n)) return fail("wrong length");
  for (const auto& v : row) {
    if (v < 0) return fail("negative entry");
  }
  switch (family) {
    case Family::Stirling1: {
      if (row.back() != 1) return fail("s(n,n) != 1");
      if (n > 0 && row.front() != 0) return fail("s(n,0) != 0");
      // Rising factorial identity at three sample points.
      for (long x : {1L, 2L, -3L}) {
        if (horner(row, x) != rising_factorial(x, n)) return fail("rising factorial mismatch at x=" + std::to_string(x));
      }
      break;
    }
    case Family::Stirling2: {
      if (row.back() != 1) return fail("S(n,n) != 1");
      if (n > 0 && row.front() != 0) return fail("S(n,0) != 0");
      // x^n = sum_k S(n,k) k! binom(x,k); x = n weighs every entry.
      for (long x : {2L, 3L, static_cast<long>(n)}) {
        ExactInt total = 0;
        for (std::size_t k = 0; k < row.size(); ++k) total += row[k] * factorial(k) * binom(x, static_cast<std::int64_t>(k));
        if (total != power(x, n)) return fail("power identity mismatch at x=" + std::to_string(x));
      }
      break;
    }
    case Family::Eulerian: {
      if (row.front() != 1) return fail("<n 0> != 1");
      ExactInt total = 0;
      for (const auto& v : row) total += v;
      if (total != factorial(n)) return fail("row sum != n!");
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] != row[row.size() - 1 - k]) return fail("not symmetric");
      }
      // Worpitzky: x^n = sum_k <n k> binom(x+k, n).
      if (n > 0) {
        for (long x : {2L, 3L}) {
          ExactInt w = 0;
          for (std::size_t k = 0; k < row.size(); ++k) w += row[k] * binom(x + static_cast<long>(k), static_cast<std::int64_t>(n));
          if (w != power(x, n)) return fail("Worpitzky identity mismatch at x=" + std::to_string(x));
        }
      }
      break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_rows(Family family, const std::vector<std::vector<ExactInt>>& rows) {
  if (rows.empty()) return std::string("triangle has no rows");
  for (std::uint64_t n = 0; n < rows.size(); ++n) {
    if (auto problem = check_row(family, n, rows[n])) return problem;
  }
  return std::nullopt;
}

std::filesystem::path cache_file_path(const std::filesystem::path& cache_dir, Family family,
                                      std::uint64_t max_n) {
  return cache_dir / (std::string(family_name(family)) + "_n" + std::to_string(max_n) + ".tri");
}

std::string serialize_triangle(const Triangle& triangle) {
  nlohmann::json header = {{"format_version", kCacheFormatVersion},
                           {"family", family_name(triangle.family())},
                           {"max_n", triangle.max_n()}};
  std::string out = header.dump();
  out += '\n';
  for (const auto& row : triangle.rows()) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ' ';
      out += to_decimal(row[k]);
    }
    out += '\n';
  }
  return out;
}

Triangle parse_triangle(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("triangle file is empty");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad triangle header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("format_version") || !header.contains("family") ||
      !header.contains("max_n")) {
    throw ParameterError("triangle header lacks format_version/family/max_n");
  }
  if (header["format_version"] != kCacheFormatVersion) {
    throw ParameterError("unsupported triangle format version " + header["format_version"].dump());
  }
  const Family family = parse_family(header["family"].get<std::string>());
  const auto max_n = header["max_n"].get<std::uint64_t>();

  std::vector<std::vector<ExactInt>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream tokens(line);
    std::vector<ExactInt> row;
    std::string token;
    while (tokens >> token) {
      ExactInt v;
      if (v.set_str(token, 10) != 0) throw ParameterError("bad triangle entry '" + token + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != max_n + 1) {
    throw ParameterError("triangle header declares max_n " + std::to_string(max_n) + " but file has " +
                         std::to_string(rows.size()) + " rows");
  }
  return Triangle::from_rows(family, std::move(rows));
}

void write_triangle_file(const Triangle& triangle, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << serialize_triangle(triangle);
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

LoadedTriangle load_or_build(Family family, std::uint64_t max_n,
                             const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return {Triangle::build(family, max_n), CacheStatus::Built, {}};

  const auto path = cache_file_path(*cache_dir, family, max_n);
  std::string warning;
  if (std::filesystem::exists(path)) {
    try {
      std::ifstream in(path, std::ios::binary);
      std::stringstream buffer;
      buffer << in.rdbuf();
      Triangle cached = parse_triangle(buffer.str());
      if (cached.family() == family && cached.max_n() == max_n) {
        return {std::move(cached), CacheStatus::Loaded, {}};
      }
      warning = "cache " + path.string() + " holds a different table";
    } catch (const std::exception& e) {
      warning = "cache " + path.string() + " rejected: " + e.what();
    }
    std::cerr << "warning: " << warning << "; rebuilding\n";
  }

  Triangle built = Triangle::build(family, max_n);
  write_triangle_file(built, path);
  return {std::move(built), warning.empty() ? CacheStatus::Built : CacheStatus::Rebuilt, warning};
}

TriangleSet::TriangleSet(std::uint64_t max_n, const std::optional<std::filesystem::path>& cache_dir)
    : max_n_(max_n),
      s1_(load_or_build(Family::Stirling1, max_n, cache_dir).triangle),
      s2_(load_or_build(Family::Stirling2, max_n, cache_dir).triangle),
      eu_(load_or_build(Family::Eulerian, max_n, cache_dir).triangle) {}

const Triangle& TriangleSet::table(Family family) const {
  switch (family) {
    case Family::Stirling1: return s1_;
    case Family::Stirling2: return s2_;
    case Family::Eulerian: return eu_;
  }
  return s1_;
}

}  // namespace clab
