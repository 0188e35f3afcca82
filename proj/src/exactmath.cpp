#include "clab/exactmath.hpp"

#include <cstdlib>
#include <limits>
#include <sstream>

namespace clab {

std::string to_decimal(const ExactInt& x) { return x.get_str(10); }

std::string PAdicOrder::to_string() const {
  return is_infinite() ? "inf" : std::to_string(*value_);
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw ParameterError("p = " + std::to_string(p) + " is not a prime");
  }
}

PAdicOrder ord_p(const ExactInt& x, std::int64_t p) {
  require_prime(p);
  if (x == 0) return PAdicOrder::infinity();
  mpz_class rest = abs(x);
  mpz_class prime = static_cast<unsigned long>(p);
  // mpz_remove strips every factor of p and reports how many it removed.
  std::uint64_t e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
  return PAdicOrder::finite(e);
}

std::uint64_t ord_p_factorial(std::uint64_t n, std::int64_t p) {
  require_prime(p);
  const auto q = static_cast<std::uint64_t>(p);
  std::uint64_t total = 0;
  for (std::uint64_t m = n / q; m > 0; m /= q) total += m;
  return total;
}

ExactInt factorial(std::uint64_t n) {
  ExactInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

ExactInt binom(const ExactInt& x, std::int64_t k) {
  if (k < 0) return 0;
  ExactInt result;
  // GMP handles negative x through the identity binom(-x, k) = (-1)^k binom(x+k-1, k).
  mpz_bin_ui(result.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(k));
  return result;
}

ExactInt rising_factorial(const ExactInt& x, std::uint64_t n) {
  ExactInt result = 1;
  ExactInt factor = x;
  for (std::uint64_t i = 0; i < n; ++i) {
    result *= factor;
    if (result == 0) break;
    ++factor;
  }
  return result;
}

ExactInt power(const ExactInt& base, std::uint64_t e) {
  ExactInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return result;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t int_pow(std::int64_t base, std::uint64_t e) {
  std::int64_t result = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && std::abs(result) > std::numeric_limits<std::int64_t>::max() / std::abs(base)) {
      throw ParameterError("integer power " + std::to_string(base) + "^" + std::to_string(e) +
                           " overflows");
    }
    result *= base;
  }
  return result;
}

IntPolynomial::IntPolynomial(std::vector<ExactInt> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::monomial(std::uint64_t degree) {
  std::vector<ExactInt> c(degree + 1, ExactInt(0));
  c.back() = 1;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<ExactInt> c;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) {
      throw ParameterError("empty coefficient in polynomial '" + std::string(text) + "'");
    }
    std::string digits(item);
    if (digits.front() == '+') digits.erase(0, 1);
    ExactInt value;
    if (digits.empty() || value.set_str(digits, 10) != 0) {
      throw ParameterError("bad coefficient '" + std::string(item) + "' in polynomial '" +
                           std::string(text) + "'");
    }
    c.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return IntPolynomial(std::move(c));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t IntPolynomial::degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

bool IntPolynomial::is_zero() const { return coeffs_.empty(); }

ExactInt IntPolynomial::operator()(const ExactInt& x) const {
  ExactInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::string IntPolynomial::to_coefficient_list() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += to_decimal(coeffs_[i]);
  }
  return out;
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const ExactInt& c = coeffs_[i];
    if (c == 0) continue;
    ExactInt mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << 'x';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

}  // namespace clab
