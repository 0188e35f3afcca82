#pragma once

#include <cstdint>

#include "clab/exactmath.hpp"
#include "clab/triangles.hpp"

namespace clab {

/// Residue class r mod d with r canonicalized into [0, d).
class ResidueClass {
 public:
  ResidueClass(std::int64_t modulus, std::int64_t residue);

  std::int64_t modulus() const { return modulus_; }
  std::int64_t residue() const { return residue_; }
  bool contains(std::int64_t k) const;

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

 private:
  std::int64_t modulus_;
  std::int64_t residue_;
};

/// Weight binom((k-r)/p^alpha, l) for EXACT, binom(floor((k-r)/p^alpha), l) for FLOOR.
enum class FleckVariant { Exact, Floor };

// Every sum below runs over the natural support of its weights: k = 0..n,
// or k = 0..n-1 for Eulerian numbers, restricted to k in the residue class.

/// EXACT: sum_{k = r mod p^alpha} binom(n,k) (-1)^k binom((k-r)/p^alpha, l).
/// FLOOR: sum_{k = r mod p^beta} binom(n,k) (-1)^k binom(floor((k-r)/p^alpha), l),
/// requiring alpha >= beta >= 0. The class modulus must be p^alpha (EXACT)
/// or p^beta (FLOOR), otherwise ParameterError.
ExactInt fleck_sum(std::int64_t n, std::int64_t p, std::int64_t alpha, const ResidueClass& cls,
                   std::int64_t l, FleckVariant variant = FleckVariant::Exact, std::int64_t beta = 0);

/// sum_{k = r mod p^alpha} binom(n,k) (-a)^k.
ExactInt binom_power_sum(std::int64_t n, std::int64_t p, std::int64_t alpha, const ResidueClass& cls,
                         const ExactInt& a);

/// sum_{k = r mod p^alpha} <n k> binom((k-r)/p^alpha, l).
ExactInt eulerian_wan_sum(const TriangleSet& tables, std::int64_t n, std::int64_t p, std::int64_t alpha,
                          const ResidueClass& cls, std::int64_t l);

/// sum_{k = r mod p^alpha} <n k> a^k.
ExactInt eulerian_power_sum(const TriangleSet& tables, std::int64_t n, std::int64_t p, std::int64_t alpha,
                            const ResidueClass& cls, const ExactInt& a);

/// C_{d,r}(n,m,a) = sum_{k = r mod d} s(n,k) S(k,m) a^k; d is the class modulus.
ExactInt stirling_product_sum(const TriangleSet& tables, std::int64_t n, std::int64_t m,
                              const ResidueClass& cls, const ExactInt& a);

/// sum_{k = r mod d} s(n,k) f(k) a^k.
ExactInt stirling_poly_sum(const TriangleSet& tables, std::int64_t n, const IntPolynomial& f,
                           const ResidueClass& cls, const ExactInt& a);

}  // namespace clab
