#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnslab/coeffengine.hpp"
#include "cnslab/constructions.hpp"

namespace cnslab {

// Default cap on exhaustive instance enumerations.
inline constexpr std::uint64_t kDefaultEnumLimit = 100'000'000;

struct BoundCheck {
  bool holds = false;
  std::uint64_t observed = 0;
  std::uint64_t bound = 0;
};

struct MainCheck {
  bool holds = false;
  std::uint64_t observed_lower = 0;  // |Sigma_alpha|
  std::uint64_t observed_upper = 0;  // |Sigma^alpha|
  std::uint64_t bound = 0;
};

// |A + B| >= min(p, |A| + |B| - 1).
BoundCheck check_cd(const FpSet& a, const FpSet& b);

// |h^wedge A| >= min(p, h(|A| - h) + 1); h may be 0 (the row {0}).
BoundCheck check_dsh(const FpSet& a, std::uint64_t h);

// Asymmetric A: |Sigma_alpha(A)| = |Sigma^alpha(A)| >= min(p, m_{d,alpha}+1).
MainCheck check_main(const FpSet& a, std::uint64_t alpha);

struct Violation {
  std::vector<std::uint64_t> set_a;
  std::vector<std::uint64_t> set_b;  // CD only
  std::uint64_t param = 0;           // h or alpha
  std::uint64_t observed = 0;
  std::uint64_t bound = 0;
};

struct TheoremReport {
  TheoremKind kind;
  std::uint64_t p = 0;
  std::string mode;  // "exhaustive" or "random"
  std::uint64_t instances_checked = 0;
  std::vector<Violation> violations;
  double elapsed_ms = 0;
};

// Checks every instance at p: all ordered pairs of nonempty subsets (CD),
// all subsets with all h (DSH), or all asymmetric subsets with all alpha
// (MAIN, enumerated by one of absent/positive/negative per magnitude class).
// Requires p <= 31 and instance count within max_instances.
TheoremReport exhaustive_verify(Prime p, TheoremKind kind,
                                std::uint64_t max_instances = kDefaultEnumLimit,
                                unsigned workers = 1);

// Seeded random instances; identical (seed, samples) give identical reports
// for any worker count.
TheoremReport random_verify(Prime p, TheoremKind kind, std::uint64_t samples,
                            std::uint64_t seed, unsigned workers = 1);

struct CoefficientReport {
  TheoremKind kind;
  std::uint64_t p = 0;
  std::uint32_t param1 = 0;
  std::uint32_t param2 = 0;
  std::uint64_t delta = 0;
  std::optional<std::uint64_t> full_sum;
  std::optional<std::uint64_t> single_point;
  std::optional<std::uint64_t> closed_form;
  std::optional<std::uint64_t> expansion;
  std::string closed_form_exact;  // factored integer display
  std::uint64_t grid_size = 0;
  std::uint64_t nonzero_point_count = 0;
  std::vector<std::vector<std::uint64_t>> nonzero_point_sample;
  bool agreement = false;  // all computed values equal
  std::vector<std::string> warnings;
};

struct MethodSelect {
  bool full_sum = true;
  bool single_point = true;
  bool closed_form = true;
  bool expansion = true;
};

// Builds the reference model for (param1, param2) and cross-checks the
// selected coefficient methods plus the nonvanishing census.
CoefficientReport construction_audit(TheoremKind kind, std::uint32_t param1, std::uint32_t param2,
                                     Prime p, MethodSelect select = {},
                                     std::uint64_t grid_limit = kDefaultGridLimit,
                                     unsigned workers = 1);

}  // namespace cnslab
