#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cnslab/errors.hpp"

namespace cnslab {

// Deterministic Miller-Rabin; exact for every 64-bit input (fixed witness set).
bool is_prime(std::uint64_t n);

// Validated field order.  Cheap value type; all modular helpers take it by value.
class Prime {
 public:
  explicit Prime(std::uint64_t p);
  std::uint64_t value() const { return p_; }
  friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }
  friend bool operator!=(Prime a, Prime b) { return a.p_ != b.p_; }

 private:
  std::uint64_t p_;
};

// Canonical residue in [0, p) of an arbitrary signed integer.
std::uint64_t fp_normalize(std::int64_t x, Prime p);

std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, Prime p);
std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, Prime p);
std::uint64_t fp_neg(std::uint64_t a, Prime p);
std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, Prime p);
std::uint64_t fp_pow(std::uint64_t base, std::uint64_t exp, Prime p);
std::uint64_t fp_inv(std::uint64_t a, Prime p);  // throws zero_inverse on 0

// Exact rational kept as a sign and a prime factorization with (possibly
// negative) exponents.  The map never stores zero exponents, so equality of
// maps is equality of values.
class FactoredRational {
 public:
  FactoredRational() : sign_(0) {}  // zero

  static FactoredRational one();
  static FactoredRational from_integer(std::int64_t v);
  static FactoredRational power_of_two(std::int64_t e);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool is_integer() const;  // true for zero and whenever no exponent is negative
  const std::map<std::uint64_t, std::int64_t>& exponents() const { return exp_; }

  FactoredRational& operator*=(const FactoredRational& o);
  FactoredRational& operator/=(const FactoredRational& o);  // throws division_by_zero
  friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) { return a *= b; }
  friend FactoredRational operator/(FactoredRational a, const FactoredRational& b) { return a /= b; }
  FactoredRational pow(std::int64_t e) const;

  bool operator==(const FactoredRational& o) const = default;

  // Residue mod p.  Throws not_p_integral when the exponent of p is negative;
  // returns 0 when it is positive.
  std::uint64_t reduce_mod(Prime p) const;

  // Exact integer value when integral and within int64 range.
  std::optional<std::int64_t> to_int64() const;

  // Factored display form, e.g. "-2^3*3*5" or "1/24" rendered as "2^-3*3^-1".
  std::string to_string() const;

 private:
  int sign_;
  std::map<std::uint64_t, std::int64_t> exp_;
  void bump(std::uint64_t q, std::int64_t by);
  friend FactoredRational factorial_factored(std::uint64_t n);
};

// n! in factored form (Legendre exponents).
FactoredRational factorial_factored(std::uint64_t n);

// Superfactorial 0! * 1! * ... * (n-1)!; equals the integer Vandermonde
// determinant on 1..n.
FactoredRational superfactorial_factored(std::uint64_t n);

// Binomial coefficient; k = 0 gives 1 for any n (including negative),
// 0 <= n < k gives 0, and negative n with k > 0 is rejected.
FactoredRational binomial_factored(std::int64_t n, std::uint64_t k);

}  // namespace cnslab
