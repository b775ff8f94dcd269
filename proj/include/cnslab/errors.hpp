#pragma once

#include <stdexcept>
#include <string>

namespace cnslab {

// Base class for every domain error the library raises on bad inputs or
// exceeded resource limits.  Anything else escaping (std::logic_error and
// friends) indicates an internal bug, not a caller mistake.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_prime : error {
  explicit not_prime(const std::string& w = "modulus is not prime") : error(w) {}
};

// Two operands live over different primes.
struct context_mismatch : error {
  explicit context_mismatch(const std::string& w = "operands belong to different prime fields") : error(w) {}
};

struct zero_inverse : error {
  explicit zero_inverse(const std::string& w = "zero has no multiplicative inverse") : error(w) {}
};

struct division_by_zero : error {
  explicit division_by_zero(const std::string& w = "division by zero") : error(w) {}
};

// A factored rational with a negative exponent of p cannot be reduced mod p.
struct not_p_integral : error {
  explicit not_p_integral(const std::string& w = "value is not p-integral") : error(w) {}
};

struct bad_h : error {
  explicit bad_h(const std::string& w = "fold count h out of range") : error(w) {}
};

struct bad_bounds : error {
  explicit bad_bounds(const std::string& w = "index bounds out of range") : error(w) {}
};

// The wrap correction delta left no room for the construction.
struct delta_too_large : error {
  explicit delta_too_large(const std::string& w = "wrap correction delta too large for these parameters") : error(w) {}
};

struct bad_field : error {
  explicit bad_field(const std::string& w = "construction requires an odd prime field") : error(w) {}
};

struct not_asymmetric : error {
  explicit not_asymmetric(const std::string& w = "set meets its own negation") : error(w) {}
};

struct cover_too_small : error {
  explicit cover_too_small(const std::string& w = "cover set smaller than the construction requires") : error(w) {}
};

struct not_a_member : error {
  explicit not_a_member(const std::string& w = "evaluation point is not a member of the set") : error(w) {}
};

struct grid_too_large : error {
  explicit grid_too_large(const std::string& w = "grid enumeration exceeds the configured limit") : error(w) {}
};

struct expansion_too_large : error {
  explicit expansion_too_large(const std::string& w = "dense expansion exceeds the configured limit") : error(w) {}
};

struct zero_at_bstar : error {
  explicit zero_at_bstar(const std::string& w = "polynomial vanishes at the designated point") : error(w) {}
};

// The single-point shortcut found further nonvanishing grid points.
struct uniqueness_failed : error {
  explicit uniqueness_failed(const std::string& w = "nonvanishing grid point is not unique") : error(w) {}
};

struct space_too_large : error {
  explicit space_too_large(const std::string& w = "enumeration space exceeds the configured limit") : error(w) {}
};

}  // namespace cnslab
