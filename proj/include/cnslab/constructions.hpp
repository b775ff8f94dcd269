#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cnslab/fieldcore.hpp"
#include "cnslab/subsums.hpp"

namespace cnslab {

enum class TheoremKind { CD, DSH, MAIN };

// Q models carry the reference construction with its designated point b*;
// P models carry a concrete instance over a caller-supplied root cover.
enum class ModelSide { Q, P };

// One polynomial-method witness: the product of root factors
// prod_{x in roots} (X_1+...+X_v + shift - x), optionally times the
// Vandermonde prod_{i<j} (X_j - X_i) and the "plus" factors
// prod_{i<j, j>plus_cutoff} (X_j + X_i), together with the grid it is
// evaluated on and the monomial whose coefficient certifies the bound.
struct ProofModel {
  Prime p;
  TheoremKind kind;
  ModelSide side;
  std::uint32_t param1;  // CD: n, DSH: d, MAIN: d
  std::uint32_t param2;  // CD: m, DSH: h, MAIN: alpha
  std::uint64_t delta;

  std::vector<std::vector<std::uint64_t>> grid;  // per-variable value sets, ascending residues
  std::vector<std::uint64_t> roots;              // distinct residues
  std::uint64_t shift = 0;
  bool vandermonde = false;
  std::optional<std::uint32_t> plus_cutoff;      // alpha: plus factors for pairs i<j with j>alpha (1-based)
  std::vector<std::uint32_t> monomial;           // target exponents, one per variable
  std::vector<std::uint64_t> bstar;              // designated point (Q side only)

  std::size_t vars() const { return grid.size(); }
  std::uint64_t grid_points() const;             // product of grid sizes, saturating
  std::uint64_t monomial_degree() const;
  std::uint64_t factor_degree() const;           // |roots| + pair factor count
  // True when the monomial has full total degree, the condition the
  // coefficient argument needs.
  bool degree_matches() const { return monomial_degree() == factor_degree(); }
};

// Wrap corrections: how far the untruncated bound overshoots the field.
std::uint64_t cd_delta(std::uint64_t n, std::uint64_t m, Prime p);     // max(0, n+m-1-p)
std::uint64_t dsh_delta(std::uint64_t d, std::uint64_t h, Prime p);    // max(0, h(d-h)+1-p)
std::uint64_t main_delta(std::uint64_t d, std::uint64_t alpha, Prime p);  // max(0, m_{d,alpha}-(p-1))

// d(d+1)/2 - alpha(alpha+1)/2, the subset-sum count the asymmetric bound uses.
std::uint64_t sum_count(std::uint64_t d, std::uint64_t alpha);

// Reference constructions over interval grids.
ProofModel cd_model(std::uint32_t n, std::uint32_t m, Prime p);
ProofModel dsh_model(std::uint32_t d, std::uint32_t h, Prime p);
ProofModel main_model(std::uint32_t d, std::uint32_t alpha, Prime p);

// Instance-side models: the polynomial that must vanish on the whole grid
// whenever `cover` really contains the relevant sum set.  The cover may be
// larger than the degree bookkeeping wants (then degree_matches() is false);
// smaller covers are rejected.
ProofModel cd_p_side(const FpSet& a, const FpSet& b, const FpSet& cover);
ProofModel dsh_p_side(const FpSet& a, std::uint32_t h, const FpSet& cover);
ProofModel main_p_side(const FpSet& a, std::uint32_t alpha, const FpSet& cover);

// Value of the model polynomial at a grid (or any) point.
std::uint64_t eval_model(const ProofModel& m, std::span<const std::uint64_t> point);

}  // namespace cnslab
