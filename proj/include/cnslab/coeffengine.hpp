#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cnslab/constructions.hpp"

namespace cnslab {

// Default cap on full grid enumerations (overridable per call; the CLI also
// honors the CNSLAB_MAX_GRID environment variable).
inline constexpr std::uint64_t kDefaultGridLimit = 10'000'000;

// Dense expansion guard.
inline constexpr std::size_t kMaxExpansionVars = 4;
inline constexpr std::uint64_t kMaxExpansionDegree = 24;

// Derivative of prod_{a in set}(X - a) at member b, i.e.
// prod_{a != b} (b - a).  Throws not_a_member when b is outside the set.
std::uint64_t g_prime(std::span<const std::uint64_t> set, std::uint64_t b, Prime p);
std::uint64_t g_prime(const FpSet& set, std::uint64_t b);

// Coefficient of the model's target monomial by the quadrature formula:
// sum over the whole grid of eval(b) / prod_i g_i'(b_i).  Exact for models
// whose grid sizes match the monomial (size = exponent + 1 per variable).
std::uint64_t coeff_full_sum(const ProofModel& m,
                             std::uint64_t grid_limit = kDefaultGridLimit,
                             unsigned workers = 1);

// Same coefficient via the designated point only: eval(b*) / prod g_i'(b*).
// Verifies eval(b*) != 0; unless trusted it also scans the grid (when the
// limit permits) to confirm b* is the unique nonvanishing point.
std::uint64_t coeff_single_point(const ProofModel& m,
                                 bool trust_unique = false,
                                 std::uint64_t grid_limit = kDefaultGridLimit);

struct CensusResult {
  std::uint64_t grid_size = 0;
  std::uint64_t nonzero_count = 0;
  std::vector<std::vector<std::uint64_t>> points;  // first few, in grid order
};

// Counts grid points where the model does not vanish.
CensusResult nonzero_points(const ProofModel& m,
                            std::uint64_t grid_limit = kDefaultGridLimit,
                            unsigned workers = 1,
                            std::size_t max_points = 8);

// Coefficient via dense multivariate expansion over F_p.  Guarded: at most
// kMaxExpansionVars variables and total degree kMaxExpansionDegree.
std::uint64_t expansion_coefficient(const ProofModel& m);

struct ContradictionReport {
  enum class Verdict { contradiction, consistent };
  Verdict verdict = Verdict::consistent;
  bool degree_ok = false;            // monomial has full total degree
  std::uint64_t coefficient = 0;     // certificate supplied by the caller
  std::uint64_t grid_size = 0;
  std::uint64_t nonvanishing_count = 0;
  std::vector<std::uint64_t> uncovered_values;  // sums reached at nonvanishing points, ascending
  bool witnesses_outside_cover = true;          // every such value misses the root cover
};

// Audits the contradiction step on an instance model: with a certified
// nonzero coefficient and matching degree, the polynomial cannot vanish on
// the whole grid, so the supplied cover must miss reachable sum values.  The
// scan exhibits those witnesses.  A zero coefficient certifies nothing and
// yields Verdict::consistent.
ContradictionReport cns_audit(const ProofModel& m, std::uint64_t coefficient,
                              std::uint64_t grid_limit = kDefaultGridLimit,
                              unsigned workers = 1);

}  // namespace cnslab
