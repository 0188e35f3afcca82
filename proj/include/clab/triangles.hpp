#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clab/exactmath.hpp"

namespace clab {

enum class Family { Stirling1, Stirling2, Eulerian };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

/// Immutable dense table of one number family for rows 0..max_n.
///
/// Stirling rows hold k = 0..n. Eulerian row n >= 1 holds k = 0..n-1 and
/// row 0 holds the single entry <0 0> = 1. Stirling numbers of the first
/// kind are unsigned (cycle counts, coefficients of the rising factorial).
class Triangle {
 public:
  /// Builds rows 0..max_n from the family's recurrence.
  static Triangle build(Family family, std::uint64_t max_n);

  /// Wraps externally supplied rows; throws ParameterError if any row
  /// length or invariant check fails.
  static Triangle from_rows(Family family, std::vector<std::vector<ExactInt>> rows);

  Family family() const { return family_; }
  std::uint64_t max_n() const { return rows_.size() - 1; }
  const std::vector<std::vector<ExactInt>>& rows() const { return rows_; }
  const std::vector<ExactInt>& row(std::uint64_t n) const;

  /// Entry (n, k); zero outside the row's support. CapacityError if n > max_n.
  const ExactInt& at(std::uint64_t n, std::int64_t k) const;

  friend bool operator==(const Triangle& a, const Triangle& b) {
    return a.family_ == b.family_ && a.rows_ == b.rows_;
  }

 private:
  Triangle(Family family, std::vector<std::vector<ExactInt>> rows)
      : family_(family), rows_(std::move(rows)) {}

  Family family_;
  std::vector<std::vector<ExactInt>> rows_;
};

/// Row length expected for row n of the given family.
std::size_t row_length(Family family, std::uint64_t n);

/// Checks row shapes and per-row invariants (row sums, sample-point
/// evaluations, boundary entries). Returns a description of the first
/// failure, or nullopt when the table is consistent.
std::optional<std::string> validate_rows(Family family, const std::vector<std::vector<ExactInt>>& rows);

// --- on-disk cache -----------------------------------------------------------

inline constexpr int kCacheFormatVersion = 1;

enum class CacheStatus { Built, Loaded, Rebuilt };

struct LoadedTriangle {
  Triangle triangle;
  CacheStatus status;
  std::string warning;  // set when a cache file was rejected
};

/// Canonical cache file name for (family, max_n) inside a cache directory.
std::filesystem::path cache_file_path(const std::filesystem::path& cache_dir, Family family,
                                      std::uint64_t max_n);

/// Serializes rows in the cache format: a JSON header line
/// {"family":..,"format_version":..,"max_n":..} then one row per line,
/// entries as space-separated decimals.
std::string serialize_triangle(const Triangle& triangle);
Triangle parse_triangle(std::string_view text);

/// Writes through a temporary file followed by a rename.
void write_triangle_file(const Triangle& triangle, const std::filesystem::path& path);

/// Reads the cache for (family, max_n) from cache_dir if present and valid,
/// otherwise builds the table and writes the cache. A rejected cache file is
/// reported on stderr and rebuilt. Without a cache_dir nothing touches disk.
LoadedTriangle load_or_build(Family family, std::uint64_t max_n,
                             const std::optional<std::filesystem::path>& cache_dir);

/// The three families sharing one row limit.
class TriangleSet {
 public:
  explicit TriangleSet(std::uint64_t max_n,
                       const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

  std::uint64_t max_n() const { return max_n_; }

  const ExactInt& stirling1(std::uint64_t n, std::int64_t k) const { return s1_.at(n, k); }
  const ExactInt& stirling2(std::uint64_t n, std::int64_t k) const { return s2_.at(n, k); }
  const ExactInt& eulerian(std::uint64_t n, std::int64_t k) const { return eu_.at(n, k); }

  const Triangle& table(Family family) const;

 private:
  std::uint64_t max_n_;
  Triangle s1_;
  Triangle s2_;
  Triangle eu_;
};

}  // namespace clab
