#include "cnslab/theoremlab.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>

#include "cnslab/closedforms.hpp"
#include "cnslab/parallel.hpp"
#include "cnslab/rng.hpp"

namespace cnslab {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

u64 cd_bound(u64 p, u64 ca, u64 cb) { return std::min(p, ca + cb - 1); }
u64 dsh_bound(u64 p, u64 ca, u64 h) { return std::min(p, h * (ca - h) + 1); }
u64 main_bound(u64 p, u64 ca, u64 alpha) { return std::min(p, sum_count(ca, alpha) + 1); }

// ---- word-mask kernels for exhaustive runs (p <= 31) ----

u32 rot_mask(u32 m, unsigned a, unsigned p) {
  if (a == 0) return m;
  const u32 pm = (p == 32) ? ~u32(0) : ((u32(1) << p) - 1);
  return ((m << a) | (m >> (p - a))) & pm;
}

u32 sumset_mask(u32 a, u32 b, unsigned p) {
  u32 res = 0;
  while (a) {
    const unsigned x = std::countr_zero(a);
    a &= a - 1;
    res |= rot_mask(b, x, p);
  }
  return res;
}

// rows[k] = sums of k-subsets of the mask set; rows beyond |A| stay 0.
void subsum_rows_mask(u32 set, unsigned p, std::array<u32, 33>& rows, unsigned& card) {
  rows.fill(0);
  rows[0] = 1;  // {0}
  card = 0;
  while (set) {
    const unsigned x = std::countr_zero(set);
    set &= set - 1;
    ++card;
    for (unsigned k = card; k >= 1; --k) rows[k] |= rot_mask(rows[k - 1], x, p);
  }
}

std::vector<u64> mask_members(u32 m) {
  std::vector<u64> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

struct Partial {
  u64 instances = 0;
  std::vector<Violation> violations;
};

Partial merge_partials(std::vector<Partial> parts, TheoremReport& rep) {
  Partial all;
  for (auto& part : parts) {
    all.instances += part.instances;
    for (auto& v : part.violations) all.violations.push_back(std::move(v));
  }
  rep.instances_checked = all.instances;
  rep.violations = std::move(all.violations);
  return all;
}

TheoremReport exhaustive_cd(Prime p, u64 max_instances, unsigned workers) {
  TheoremReport rep{TheoremKind::CD, p.value(), "exhaustive", 0, {}, 0};
  const unsigned pv = static_cast<unsigned>(p.value());
  const u64 m = (u64(1) << pv) - 1;  // nonempty subsets
  if (m * m > max_instances) throw space_too_large("CD enumeration needs " + std::to_string(m * m) + " instances");

  auto parts = run_chunked<Partial>(m, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    for (u64 ai = lo; ai < hi; ++ai) {
      const u32 a = static_cast<u32>(ai + 1);
      const unsigned ca = std::popcount(a);
      for (u64 bi = 0; bi < m; ++bi) {
        const u32 b = static_cast<u32>(bi + 1);
        const unsigned cb = std::popcount(b);
        const u64 bound = cd_bound(p.value(), ca, cb);
        const u64 obs = std::popcount(sumset_mask(a, b, pv));
        ++out.instances;
        if (obs < bound) out.violations.push_back({mask_members(a), mask_members(b), 0, obs, bound});
      }
    }
    return out;
  });
  merge_partials(std::move(parts), rep);
  return rep;
}

TheoremReport exhaustive_dsh(Prime p, u64 max_instances, unsigned workers) {
  TheoremReport rep{TheoremKind::DSH, p.value(), "exhaustive", 0, {}, 0};
  const unsigned pv = static_cast<unsigned>(p.value());
  const u64 nsets = u64(1) << pv;
  if (nsets * (pv + 1) > max_instances) throw space_too_large("DSH enumeration too large");

  auto parts = run_chunked<Partial>(nsets, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    std::array<u32, 33> rows;
    for (u64 si = lo; si < hi; ++si) {
      const u32 set = static_cast<u32>(si);
      unsigned card = 0;
      subsum_rows_mask(set, pv, rows, card);
      for (unsigned h = 0; h <= card; ++h) {
        const u64 bound = dsh_bound(p.value(), card, h);
        const u64 obs = std::popcount(rows[h]);
        ++out.instances;
        if (obs < bound) out.violations.push_back({mask_members(set), {}, h, obs, bound});
      }
    }
    return out;
  });
  merge_partials(std::move(parts), rep);
  return rep;
}

// Asymmetric subsets of F_p, p odd: pick absent / +x / -x independently for
// each magnitude x in 1..(p-1)/2, giving 3^((p-1)/2) sets.
u64 pow3(unsigned q) {
  u64 r = 1;
  while (q--) r *= 3;
  return r;
}

u32 decode_asymmetric(u64 code, unsigned q, unsigned p) {
  u32 set = 0;
  for (unsigned x = 1; x <= q; ++x) {
    switch (code % 3) {
      case 1: set |= u32(1) << x; break;
      case 2: set |= u32(1) << (p - x); break;
      default: break;
    }
    code /= 3;
  }
  return set;
}

TheoremReport exhaustive_main(Prime p, u64 max_instances, unsigned workers) {
  TheoremReport rep{TheoremKind::MAIN, p.value(), "exhaustive", 0, {}, 0};
  if (p.value() == 2) {
    // Only the empty set is asymmetric; nothing can fail.
    rep.instances_checked = 1;
    return rep;
  }
  const unsigned pv = static_cast<unsigned>(p.value());
  const unsigned q = (pv - 1) / 2;
  const u64 ncodes = pow3(q);
  if (ncodes * (q + 1) > max_instances) throw space_too_large("MAIN enumeration too large");

  auto parts = run_chunked<Partial>(ncodes, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    std::array<u32, 33> rows;
    std::array<u32, 34> suffix;
    std::array<u32, 34> prefix;
    for (u64 code = lo; code < hi; ++code) {
      const u32 set = decode_asymmetric(code, q, pv);
      unsigned card = 0;
      subsum_rows_mask(set, pv, rows, card);
      suffix[card + 1] = 0;
      for (unsigned k = card + 1; k-- > 0;) suffix[k] = rows[k] | suffix[k + 1];
      prefix[0] = rows[0];
      for (unsigned k = 1; k <= card; ++k) prefix[k] = prefix[k - 1] | rows[k];
      for (unsigned alpha = 0; alpha <= card; ++alpha) {
        const u64 bound = main_bound(p.value(), card, alpha);
        const u64 lower = std::popcount(suffix[alpha]);
        const u64 upper = std::popcount(prefix[card - alpha]);
        ++out.instances;
        if (lower != upper || lower < bound) {
          out.violations.push_back({mask_members(set), {}, alpha, std::min(lower, upper), bound});
        }
      }
    }
    return out;
  });
  merge_partials(std::move(parts), rep);
  return rep;
}

// ---- random sampling (general p, bit-vector path) ----

constexpr u64 kSampleSizeCap = 24;

FpSet random_subset(Prime p, SplitMix64& rng, u64 size) {
  FpSet s(p);
  u64 have = 0;
  while (have < size) {
    const u64 x = rng.below(p.value());
    if (!s.contains(x)) {
      s.insert(x);
      ++have;
    }
  }
  return s;
}

FpSet random_asymmetric(Prime p, SplitMix64& rng, u64 size) {
  // distinct magnitudes with a random sign each
  FpSet s(p);
  const u64 q = (p.value() - 1) / 2;
  FpSet used(p);
  u64 have = 0;
  while (have < size) {
    const u64 x = 1 + rng.below(q);
    if (used.contains(x)) continue;
    used.insert(x);
    s.insert(rng.below(2) ? x : p.value() - x);
    ++have;
  }
  return s;
}

}  // namespace

BoundCheck check_cd(const FpSet& a, const FpSet& b) {
  if (a.prime() != b.prime()) throw context_mismatch();
  if (a.empty() || b.empty()) throw bad_bounds("summand sets must be nonempty");
  BoundCheck c;
  c.bound = cd_bound(a.order(), a.cardinality(), b.cardinality());
  c.observed = sumset(a, b).cardinality();
  c.holds = c.observed >= c.bound;
  return c;
}

BoundCheck check_dsh(const FpSet& a, u64 h) {
  if (h > a.cardinality()) throw bad_h();
  BoundCheck c;
  c.bound = dsh_bound(a.order(), a.cardinality(), h);
  c.observed = hfold(a, h).cardinality();
  c.holds = c.observed >= c.bound;
  return c;
}

MainCheck check_main(const FpSet& a, u64 alpha) {
  if (!is_asymmetric(a)) throw not_asymmetric();
  if (alpha > a.cardinality()) throw bad_bounds("alpha exceeds |A|");
  MainCheck c;
  const auto t = SubsumTable::build(a);
  c.bound = main_bound(a.order(), a.cardinality(), alpha);
  c.observed_lower = t.union_rows(alpha, t.max_terms()).cardinality();
  c.observed_upper = t.union_rows(0, t.max_terms() - alpha).cardinality();
  c.holds = c.observed_lower == c.observed_upper && c.observed_lower >= c.bound;
  return c;
}

TheoremReport exhaustive_verify(Prime p, TheoremKind kind, u64 max_instances, unsigned workers) {
  if (p.value() > 31) throw space_too_large("exhaustive verification supports p <= 31");
  const auto t0 = Clock::now();
  TheoremReport rep;
  switch (kind) {
    case TheoremKind::CD: rep = exhaustive_cd(p, max_instances, workers); break;
    case TheoremKind::DSH: rep = exhaustive_dsh(p, max_instances, workers); break;
    case TheoremKind::MAIN: rep = exhaustive_main(p, max_instances, workers); break;
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

TheoremReport random_verify(Prime p, TheoremKind kind, u64 samples, u64 seed, unsigned workers) {
  const auto t0 = Clock::now();
  TheoremReport rep;
  rep.kind = kind;
  rep.p = p.value();
  rep.mode = "random";

  auto parts = run_chunked<Partial>(samples, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    for (u64 i = lo; i < hi; ++i) {
      // One derived stream per sample index: layout-independent results.
      SplitMix64 rng = SplitMix64::stream(seed, i);
      ++out.instances;
      switch (kind) {
        case TheoremKind::CD: {
          const u64 cap = std::min(p.value(), kSampleSizeCap);
          const FpSet a = random_subset(p, rng, 1 + rng.below(cap));
          const FpSet b = random_subset(p, rng, 1 + rng.below(cap));
          const auto c = check_cd(a, b);
          if (!c.holds) out.violations.push_back({a.members(), b.members(), 0, c.observed, c.bound});
          break;
        }
        case TheoremKind::DSH: {
          const u64 cap = std::min(p.value(), kSampleSizeCap);
          const FpSet a = random_subset(p, rng, 1 + rng.below(cap));
          const u64 h = rng.below(a.cardinality() + 1);
          const auto c = check_dsh(a, h);
          if (!c.holds) out.violations.push_back({a.members(), {}, h, c.observed, c.bound});
          break;
        }
        case TheoremKind::MAIN: {
          const u64 q = (p.value() - 1) / 2;
          const u64 cap = std::min(q, kSampleSizeCap);
          const FpSet a = cap ? random_asymmetric(p, rng, 1 + rng.below(cap)) : FpSet(p);
          const u64 alpha = rng.below(a.cardinality() + 1);
          const auto c = check_main(a, alpha);
          if (!c.holds) out.violations.push_back({a.members(), {}, alpha, std::min(c.observed_lower, c.observed_upper), c.bound});
          break;
        }
      }
    }
    return out;
  });
  merge_partials(std::move(parts), rep);
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

CoefficientReport construction_audit(TheoremKind kind, u32 param1, u32 param2, Prime p,
                                     MethodSelect select, u64 grid_limit, unsigned workers) {
  CoefficientReport rep;
  rep.kind = kind;
  rep.p = p.value();
  rep.param1 = param1;
  rep.param2 = param2;

  ProofModel model = [&] {
    switch (kind) {
      case TheoremKind::CD: return cd_model(param1, param2, p);
      case TheoremKind::DSH: return dsh_model(param1, param2, p);
      default: return main_model(param1, param2, p);
    }
  }();
  rep.delta = model.delta;

  const auto census = nonzero_points(model, grid_limit, workers);
  rep.grid_size = census.grid_size;
  rep.nonzero_point_count = census.nonzero_count;
  rep.nonzero_point_sample = census.points;
  if (census.nonzero_count != 1) {
    rep.warnings.push_back("expected a unique nonvanishing grid point, found " + std::to_string(census.nonzero_count));
  }

  if (select.full_sum) rep.full_sum = coeff_full_sum(model, grid_limit, workers);
  if (select.single_point) rep.single_point = coeff_single_point(model, /*trust_unique=*/census.nonzero_count == 1, grid_limit);
  if (select.closed_form) {
    const auto cf = [&] {
      switch (kind) {
        case TheoremKind::CD: return cd_closed(param1, param2, model.delta, p);
        case TheoremKind::DSH: return dsh_closed(param1, param2, model.delta, p);
        default: return main_closed(param1, param2, model.delta, p);
      }
    }();
    rep.closed_form_exact = cf.exact.to_string();
    if (cf.p_integral()) {
      rep.closed_form = cf.residue;
    } else {
      // Fall back on the designated-point value and flag the pole.
      rep.warnings.push_back("closed form is not p-integral; reporting the single-point value instead");
      rep.closed_form = coeff_single_point(model, census.nonzero_count == 1, grid_limit);
    }
  }
  if (select.expansion) {
    try {
      rep.expansion = expansion_coefficient(model);
    } catch (const expansion_too_large& e) {
      rep.warnings.push_back(std::string("expansion skipped: ") + e.what());
    }
  }

  std::optional<u64> ref;
  rep.agreement = true;
  for (const auto& v : {rep.full_sum, rep.single_point, rep.closed_form, rep.expansion}) {
    if (!v) continue;
    if (!ref) {
      ref = v;
    } else if (*ref != *v) {
      rep.agreement = false;
    }
  }
  if (!ref) rep.agreement = false;  // nothing was computed
  return rep;
}

}  // namespace cnslab
