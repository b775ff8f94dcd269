#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cnslab/subsums.hpp"

namespace cnslab {

// Conjectured two-sided bound: |Sigma_alpha^beta(A)| >= min(p, m_{d,alpha,beta}+1)
// with m = d(d+1)/2 - alpha(alpha+1)/2 - beta(beta+1)/2 and d = |A|.
std::uint64_t conj_bound(std::uint64_t d, std::uint64_t alpha, std::uint64_t beta, Prime p);

// The exceptional family {1, -2, 3, 4, ..., k} mod p.  Requires distinct
// residues and asymmetry (so 2k < p in particular).
FpSet family_set(std::uint64_t k, Prime p);

// All (k, p) with k >= 3, p = k(k+1)/2 - 4 an odd prime, p < limit.
// p = 2 is excluded: no nonempty asymmetric set exists there.
std::vector<std::pair<std::uint64_t, std::uint64_t>> special_pairs(std::uint64_t limit);

struct DoubleCheck {
  bool holds = false;
  std::uint64_t observed = 0;
  std::uint64_t bound = 0;
};

// Tests the conjectured bound on one asymmetric instance.
DoubleCheck check_double(const FpSet& a, std::uint64_t alpha, std::uint64_t beta);

struct ConjectureHit {
  std::vector<std::uint64_t> set;
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::uint64_t observed = 0;
  std::uint64_t bound = 0;
  bool matches_known_family = false;  // some dilation of family_set(k, p)
};

struct SearchReport {
  std::uint64_t p = 0;
  std::string mode;  // "exhaustive" or "random"
  std::uint64_t sets_checked = 0;
  std::uint64_t instances_checked = 0;
  std::vector<ConjectureHit> hits;
  double elapsed_ms = 0;
};

// Every asymmetric subset x every (alpha, beta) with alpha + beta <= |A|.
// Requires p <= 31 and instance count within max_instances.
SearchReport search_exhaustive(Prime p, std::uint64_t max_instances = 100'000'000,
                               unsigned workers = 1);

// Seeded random asymmetric sets, each tested against all (alpha, beta).
SearchReport search_sampled(Prime p, std::uint64_t samples, std::uint64_t seed,
                            unsigned workers = 1);

}  // namespace cnslab
