#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "clab/errors.hpp"

namespace clab {

/// Arbitrary-precision signed integer used for every coefficient and sum.
using ExactInt = mpz_class;

std::string to_decimal(const ExactInt& x);

/// p-adic order: a finite natural number, or infinity (the order of zero).
class PAdicOrder {
 public:
  static PAdicOrder infinity() { return PAdicOrder{}; }
  static PAdicOrder finite(std::uint64_t e) { return PAdicOrder{e}; }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  // Throws std::bad_optional_access when infinite.
  std::uint64_t value() const { return value_.value(); }

  std::string to_string() const;

  friend bool operator==(const PAdicOrder&, const PAdicOrder&) = default;
  friend std::strong_ordering operator<=>(const PAdicOrder& a, const PAdicOrder& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }

 private:
  PAdicOrder() = default;
  explicit PAdicOrder(std::uint64_t e) : value_(e) {}

  std::optional<std::uint64_t> value_;
};

bool is_prime(std::int64_t p);

// Throws ParameterError unless p is a prime (trial division).
void require_prime(std::int64_t p);

PAdicOrder ord_p(const ExactInt& x, std::int64_t p);

/// Legendre's formula: sum over j >= 1 of floor(n / p^j).
std::uint64_t ord_p_factorial(std::uint64_t n, std::int64_t p);

ExactInt factorial(std::uint64_t n);

/// Generalized binomial coefficient x(x-1)...(x-k+1)/k!, zero for k < 0.
ExactInt binom(const ExactInt& x, std::int64_t k);

/// x(x+1)...(x+n-1); the empty product is 1.
ExactInt rising_factorial(const ExactInt& x, std::uint64_t n);

/// base^e by repeated squaring, with 0^0 = 1.
ExactInt power(const ExactInt& base, std::uint64_t e);

// Floor and ceiling of a/b for b > 0 and any sign of a.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

/// p^e for small machine integers; ParameterError on overflow.
std::int64_t int_pow(std::int64_t base, std::uint64_t e);

/// Integer-coefficient polynomial, coefficient i multiplying x^i.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<ExactInt> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial monomial(std::uint64_t degree);

  /// Parses the low-to-high comma list form, e.g. "0,-1,0,3" for 3x^3 - x.
  static IntPolynomial parse(std::string_view text);

  // Degree of the zero polynomial is 0.
  std::uint64_t degree() const;
  bool is_zero() const;

  const std::vector<ExactInt>& coefficients() const { return coeffs_; }

  ExactInt operator()(const ExactInt& x) const;

  /// Canonical comma list (trailing zeros trimmed), inverse of parse.
  std::string to_coefficient_list() const;
  /// Human-readable form such as "3*x^3 - x".
  std::string to_string() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  std::vector<ExactInt> coeffs_;
};

inline ExactInt poly_eval(const IntPolynomial& f, const ExactInt& x) { return f(x); }

}  // namespace clab
