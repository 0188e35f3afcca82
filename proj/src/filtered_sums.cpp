#include "clab/filtered_sums.hpp"

#include <stdexcept>

namespace clab {

ResidueClass::ResidueClass(std::int64_t modulus, std::int64_t residue) : modulus_(modulus) {
  if (modulus <= 0) throw ParameterError("residue class modulus must be positive");
  residue_ = residue % modulus;
  if (residue_ < 0) residue_ += modulus;
}

bool ResidueClass::contains(std::int64_t k) const {
  std::int64_t rem = k % modulus_;
  if (rem < 0) rem += modulus_;
  return rem == residue_;
}

namespace {

void require_natural(std::int64_t v, const char* name) {
  if (v < 0) throw ParameterError(std::string(name) + " must be nonnegative");
}

void require_modulus(const ResidueClass& cls, std::int64_t expected, const char* what) {
  if (cls.modulus() != expected) {
    throw ParameterError(std::string("residue class modulus ") + std::to_string(cls.modulus()) +
                         " does not match " + what + " = " + std::to_string(expected));
  }
}

// Calls body(k) for each k in [0, last] lying in cls, ascending.
template <class Body>
void for_each_in_class(const ResidueClass& cls, std::int64_t last, Body&& body) {
  for (std::int64_t k = cls.residue(); k <= last; k += cls.modulus()) body(k);
}

// For canonical r and k = r mod p^alpha, (k - r) / p^alpha is a natural number.
std::int64_t exact_quotient(std::int64_t shifted, std::int64_t p_alpha) {
  if (shifted < 0 || shifted % p_alpha != 0) {
    throw std::logic_error("index outside its residue class: " + std::to_string(shifted));
  }
  return shifted / p_alpha;
}

ExactInt sign(std::int64_t k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

ExactInt fleck_sum(std::int64_t n, std::int64_t p, std::int64_t alpha, const ResidueClass& cls,
                   std::int64_t l, FleckVariant variant, std::int64_t beta) {
  require_prime(p);
  require_natural(n, "n");
  require_natural(l, "l");
  if (alpha < 1) throw ParameterError("alpha must be positive");
  const std::int64_t p_alpha = int_pow(p, static_cast<std::uint64_t>(alpha));
  if (variant == FleckVariant::Exact) {
    require_modulus(cls, p_alpha, "p^alpha");
  } else {
    if (beta < 0 || beta > alpha) throw ParameterError("floor variant needs alpha >= beta >= 0");
    require_modulus(cls, int_pow(p, static_cast<std::uint64_t>(beta)), "p^beta");
  }

  const ExactInt big_n = n;
  ExactInt total = 0;
  for_each_in_class(cls, n, [&](std::int64_t k) {
    const std::int64_t shifted = k - cls.residue();
    std::int64_t q;
    if (variant == FleckVariant::Exact) {
      q = exact_quotient(shifted, p_alpha);
    } else {
      q = floor_div(shifted, p_alpha);
    }
    total += sign(k) * binom(big_n, k) * binom(q, l);
  });
  return total;
}

ExactInt binom_power_sum(std::int64_t n, std::int64_t p, std::int64_t alpha, const ResidueClass& cls,
                         const ExactInt& a) {
  require_prime(p);
  require_natural(n, "n");
  if (alpha < 1) throw ParameterError("alpha must be positive");
  require_modulus(cls, int_pow(p, static_cast<std::uint64_t>(alpha)), "p^alpha");
  const ExactInt big_n = n;
  const ExactInt neg_a = -a;
  ExactInt total = 0;
  for_each_in_class(cls, n, [&](std::int64_t k) {
    total += binom(big_n, k) * power(neg_a, static_cast<std::uint64_t>(k));
  });
  return total;
}

ExactInt eulerian_wan_sum(const TriangleSet& tables, std::int64_t n, std::int64_t p, std::int64_t alpha,
                          const ResidueClass& cls, std::int64_t l) {
  require_prime(p);
  require_natural(l, "l");
  if (n < 1) throw ParameterError("n must be positive");
  if (alpha < 1) throw ParameterError("alpha must be positive");
  const std::int64_t p_alpha = int_pow(p, static_cast<std::uint64_t>(alpha));
  require_modulus(cls, p_alpha, "p^alpha");
  const auto& row = tables.table(Family::Eulerian).row(static_cast<std::uint64_t>(n));
  ExactInt total = 0;
  for_each_in_class(cls, n - 1, [&](std::int64_t k) {
    const std::int64_t shifted = k - cls.residue();
    total += row[static_cast<std::size_t>(k)] * binom(exact_quotient(shifted, p_alpha), l);
  });
  return total;
}

ExactInt eulerian_power_sum(const TriangleSet& tables, std::int64_t n, std::int64_t p, std::int64_t alpha,
                            const ResidueClass& cls, const ExactInt& a) {
  require_prime(p);
  if (n < 1) throw ParameterError("n must be positive");
  if (alpha < 1) throw ParameterError("alpha must be positive");
  require_modulus(cls, int_pow(p, static_cast<std::uint64_t>(alpha)), "p^alpha");
  const auto& row = tables.table(Family::Eulerian).row(static_cast<std::uint64_t>(n));
  ExactInt total = 0;
  for_each_in_class(cls, n - 1, [&](std::int64_t k) {
    total += row[static_cast<std::size_t>(k)] * power(a, static_cast<std::uint64_t>(k));
  });
  return total;
}

ExactInt stirling_product_sum(const TriangleSet& tables, std::int64_t n, std::int64_t m,
                              const ResidueClass& cls, const ExactInt& a) {
  require_natural(n, "n");
  require_natural(m, "m");
  const auto& s1 = tables.table(Family::Stirling1).row(static_cast<std::uint64_t>(n));
  const auto& s2 = tables.table(Family::Stirling2);
  ExactInt total = 0;
  for_each_in_class(cls, n, [&](std::int64_t k) {
    const ExactInt& big_s = s2.at(static_cast<std::uint64_t>(k), m);
    if (big_s == 0) return;
    total += s1[static_cast<std::size_t>(k)] * big_s * power(a, static_cast<std::uint64_t>(k));
  });
  return total;
}

ExactInt stirling_poly_sum(const TriangleSet& tables, std::int64_t n, const IntPolynomial& f,
                           const ResidueClass& cls, const ExactInt& a) {
  require_natural(n, "n");
  const auto& s1 = tables.table(Family::Stirling1).row(static_cast<std::uint64_t>(n));
  ExactInt total = 0;
  if (f.is_zero()) return total;
  for_each_in_class(cls, n, [&](std::int64_t k) {
    total += s1[static_cast<std::size_t>(k)] * f(k) * power(a, static_cast<std::uint64_t>(k));
  });
  return total;
}

}  // namespace clab
