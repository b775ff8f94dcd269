#include "cnslab/coeffengine.hpp"

#include <algorithm>

#include "cnslab/parallel.hpp"

namespace cnslab {

namespace {

using u64 = std::uint64_t;

// Mixed-radix iteration over grid index ranges.  Digits follow grid order
// with the last variable fastest.
struct Odometer {
  const ProofModel& m;
  std::vector<std::size_t> digit;
  std::vector<u64> point;

  Odometer(const ProofModel& mm, u64 start) : m(mm), digit(mm.vars()), point(mm.vars()) {
    u64 rest = start;
    for (std::size_t i = m.vars(); i-- > 0;) {
      const std::size_t base = m.grid[i].size();
      digit[i] = rest % base;
      rest /= base;
      point[i] = m.grid[i][digit[i]];
    }
  }

  void advance() {
    for (std::size_t i = m.vars(); i-- > 0;) {
      if (++digit[i] < m.grid[i].size()) {
        point[i] = m.grid[i][digit[i]];
        return;
      }
      digit[i] = 0;
      point[i] = m.grid[i][0];
    }
  }
};

void check_grid_limit(const ProofModel& m, u64 limit) {
  if (m.grid_points() > limit) {
    throw grid_too_large("grid has " + std::to_string(m.grid_points()) + " points, limit " + std::to_string(limit));
  }
}

}  // namespace

u64 g_prime(std::span<const u64> set, u64 b, Prime p) {
  bool member = false;
  u64 prod = 1;
  for (u64 a : set) {
    if (a == b) {
      member = true;
      continue;
    }
    prod = fp_mul(prod, fp_sub(b, a, p), p);
  }
  if (!member) throw not_a_member();
  return prod;
}

u64 g_prime(const FpSet& set, u64 b) {
  const auto mem = set.members();
  return g_prime(std::span<const u64>(mem), b, set.prime());
}

u64 coeff_full_sum(const ProofModel& m, u64 grid_limit, unsigned workers) {
  check_grid_limit(m, grid_limit);
  const Prime p = m.p;

  // Inverse derivative weights per grid row, indexed like the grid digits.
  std::vector<std::vector<u64>> winv(m.vars());
  for (std::size_t i = 0; i < m.vars(); ++i) {
    for (u64 b : m.grid[i]) {
      winv[i].push_back(fp_inv(g_prime(std::span<const u64>(m.grid[i]), b, p), p));
    }
  }

  const u64 total = m.grid_points();
  auto partials = run_chunked<u64>(total, workers, [&](u64 lo, u64 hi) -> u64 {
    Odometer od(m, lo);
    u64 acc = 0;
    for (u64 idx = lo; idx < hi; ++idx, od.advance()) {
      u64 term = eval_model(m, od.point);
      if (term) {
        for (std::size_t i = 0; i < m.vars(); ++i) term = fp_mul(term, winv[i][od.digit[i]], p);
        acc = fp_add(acc, term, p);
      }
    }
    return acc;
  });
  u64 total_sum = 0;
  for (u64 s : partials) total_sum = fp_add(total_sum, s, p);
  return total_sum;
}

CensusResult nonzero_points(const ProofModel& m, u64 grid_limit, unsigned workers, std::size_t max_points) {
  check_grid_limit(m, grid_limit);
  const u64 total = m.grid_points();

  struct Partial {
    u64 count = 0;
    std::vector<std::vector<u64>> pts;
  };
  auto partials = run_chunked<Partial>(total, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    Odometer od(m, lo);
    for (u64 idx = lo; idx < hi; ++idx, od.advance()) {
      if (eval_model(m, od.point) != 0) {
        ++out.count;
        if (out.pts.size() < max_points) out.pts.push_back(od.point);
      }
    }
    return out;
  });

  CensusResult res;
  res.grid_size = total;
  for (auto& part : partials) {
    res.nonzero_count += part.count;
    for (auto& pt : part.pts) {
      if (res.points.size() < max_points) res.points.push_back(std::move(pt));
    }
  }
  return res;
}

u64 coeff_single_point(const ProofModel& m, bool trust_unique, u64 grid_limit) {
  if (m.bstar.size() != m.vars()) throw bad_bounds("model lacks a designated point");
  const Prime p = m.p;
  const u64 val = eval_model(m, m.bstar);
  if (val == 0) throw zero_at_bstar();
  if (!trust_unique && m.grid_points() <= grid_limit) {
    const auto census = nonzero_points(m, grid_limit, 1, 1);
    if (census.nonzero_count != 1) {
      throw uniqueness_failed("census found " + std::to_string(census.nonzero_count) + " nonvanishing grid points");
    }
  }
  u64 coeff = val;
  for (std::size_t i = 0; i < m.vars(); ++i) {
    coeff = fp_mul(coeff, fp_inv(g_prime(std::span<const u64>(m.grid[i]), m.bstar[i], p), p), p);
  }
  return coeff;
}

u64 expansion_coefficient(const ProofModel& m) {
  const std::size_t v = m.vars();
  if (v > kMaxExpansionVars) {
    throw expansion_too_large("expansion limited to " + std::to_string(kMaxExpansionVars) + " variables");
  }
  const u64 deg = m.factor_degree();
  if (deg > kMaxExpansionDegree) {
    throw expansion_too_large("expansion limited to total degree " + std::to_string(kMaxExpansionDegree));
  }
  const Prime p = m.p;

  // Dense table indexed by per-variable exponents, each up to the total
  // degree.  Every factor is linear, so one pass per factor suffices.
  const std::size_t dim = static_cast<std::size_t>(deg) + 1;
  std::size_t size = 1;
  for (std::size_t i = 0; i < v; ++i) size *= dim;
  std::vector<u64> strides(v);
  for (std::size_t i = 0; i < v; ++i) {
    std::size_t s = 1;
    for (std::size_t j = i + 1; j < v; ++j) s *= dim;
    strides[i] = s;
  }

  struct Linear {
    u64 c0;
    std::vector<std::pair<std::size_t, u64>> terms;  // (variable, coefficient)
  };
  std::vector<Linear> factors;
  for (u64 r : m.roots) {
    Linear f{fp_sub(m.shift, r, p), {}};
    for (std::size_t i = 0; i < v; ++i) f.terms.emplace_back(i, 1);
    factors.push_back(std::move(f));
  }
  if (m.vandermonde) {
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = i + 1; j < v; ++j) {
        factors.push_back(Linear{0, {{j, 1}, {i, p.value() - 1}}});
      }
    }
  }
  if (m.plus_cutoff) {
    const std::size_t cutoff = *m.plus_cutoff;
    for (std::size_t j = 1; j < v; ++j) {
      if (j + 1 <= cutoff) continue;
      for (std::size_t i = 0; i < j; ++i) factors.push_back(Linear{0, {{j, 1}, {i, 1}}});
    }
  }

  std::vector<u64> poly(size, 0), next(size, 0);
  poly[0] = 1;
  std::vector<std::size_t> expo(v, 0);
  for (const auto& f : factors) {
    std::fill(next.begin(), next.end(), 0);
    std::fill(expo.begin(), expo.end(), 0);
    for (std::size_t idx = 0; idx < size; ++idx) {
      const u64 c = poly[idx];
      if (c != 0) {
        if (f.c0) next[idx] = fp_add(next[idx], fp_mul(c, f.c0, p), p);
        for (const auto& [var, cv] : f.terms) {
          if (expo[var] + 1 < dim) {
            const std::size_t tgt = idx + strides[var];
            next[tgt] = fp_add(next[tgt], fp_mul(c, cv, p), p);
          }
        }
      }
      // advance the exponent odometer alongside idx
      for (std::size_t i = v; i-- > 0;) {
        if (++expo[i] < dim) break;
        expo[i] = 0;
      }
    }
    std::swap(poly, next);
  }

  std::size_t idx = 0;
  for (std::size_t i = 0; i < v; ++i) {
    if (m.monomial[i] >= dim) return 0;  // exponent above total degree: coefficient is 0
    idx += strides[i] * m.monomial[i];
  }
  return poly[idx];
}

ContradictionReport cns_audit(const ProofModel& m, u64 coefficient, u64 grid_limit, unsigned workers) {
  ContradictionReport rep;
  rep.degree_ok = m.degree_matches();
  rep.coefficient = coefficient;

  FpSet cover(m.p);
  for (u64 r : m.roots) cover.insert(r);
  FpSet uncovered(m.p);

  check_grid_limit(m, grid_limit);
  const u64 total = m.grid_points();
  rep.grid_size = total;

  struct Partial {
    u64 count = 0;
    std::vector<u64> values;
    bool outside = true;
  };
  auto partials = run_chunked<Partial>(total, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    Odometer od(m, lo);
    for (u64 idx = lo; idx < hi; ++idx, od.advance()) {
      if (eval_model(m, od.point) != 0) {
        ++out.count;
        u64 s = m.shift;
        for (u64 x : od.point) s = fp_add(s, x, m.p);
        out.values.push_back(s);
        if (cover.contains(s)) out.outside = false;
      }
    }
    return out;
  });
  for (auto& part : partials) {
    rep.nonvanishing_count += part.count;
    for (u64 s : part.values) uncovered.insert(s);
    rep.witnesses_outside_cover = rep.witnesses_outside_cover && part.outside;
  }
  rep.uncovered_values = uncovered.members();

  rep.verdict = (coefficient != 0 && rep.degree_ok) ? ContradictionReport::Verdict::contradiction
                                                    : ContradictionReport::Verdict::consistent;
  return rep;
}

}  // namespace cnslab
