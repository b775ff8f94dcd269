#include "cnslab/conjlab.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>

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

u64 double_count(u64 d, u64 alpha, u64 beta) {
  return d * (d + 1) / 2 - alpha * (alpha + 1) / 2 - beta * (beta + 1) / 2;
}

// Every dilation of the exceptional family at p, as membership bit masks.
// Empty when p is not of the special form k(k+1)/2 - 4 or the family is
// degenerate there.
std::vector<u32> family_dilation_masks(Prime p) {
  std::vector<u32> out;
  // recover k from p = k(k+1)/2 - 4
  u64 k = 0;
  for (u64 t = 3; t * (t + 1) / 2 <= p.value() + 4; ++t) {
    if (t * (t + 1) / 2 == p.value() + 4) {
      k = t;
      break;
    }
  }
  if (k == 0) return out;
  FpSet base(p);
  try {
    base = family_set(k, p);
  } catch (const error&) {
    return out;
  }
  for (u64 lambda = 1; lambda < p.value(); ++lambda) {
    u32 mask = 0;
    for (u64 x : base.dilated(lambda).members()) mask |= u32(1) << x;
    out.push_back(mask);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

u32 rot_mask(u32 m, unsigned a, unsigned p) {
  if (a == 0) return m;
  const u32 pm = (p == 32) ? ~u32(0) : ((u32(1) << p) - 1);
  return ((m << a) | (m >> (p - a))) & pm;
}

void subsum_rows_mask(u32 set, unsigned p, std::array<u32, 33>& rows, unsigned& card) {
  rows.fill(0);
  rows[0] = 1;
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

struct Partial {
  u64 sets = 0;
  u64 instances = 0;
  std::vector<ConjectureHit> hits;
};

// Checks all (alpha, beta) pairs for one subset given its subsum rows.
void scan_pairs(u32 set, unsigned card, const std::array<u32, 33>& rows, Prime p,
                const std::vector<u32>& family, Partial& out) {
  for (unsigned alpha = 0; alpha <= card; ++alpha) {
    // cumulative unions of rows alpha..j
    u32 cum = 0;
    std::array<u32, 33> up_to{};  // up_to[j] = rows[alpha] | ... | rows[j]
    for (unsigned j = alpha; j <= card; ++j) {
      cum |= rows[j];
      up_to[j] = cum;
    }
    for (unsigned beta = 0; alpha + beta <= card; ++beta) {
      ++out.instances;
      const u64 bound = std::min<u64>(p.value(), double_count(card, alpha, beta) + 1);
      const u64 obs = std::popcount(up_to[card - beta]);
      if (obs < bound) {
        ConjectureHit hit;
        hit.set = mask_members(set);
        hit.alpha = alpha;
        hit.beta = beta;
        hit.observed = obs;
        hit.bound = bound;
        hit.matches_known_family = std::binary_search(family.begin(), family.end(), set);
        out.hits.push_back(std::move(hit));
      }
    }
  }
}

}  // namespace

u64 conj_bound(u64 d, u64 alpha, u64 beta, Prime p) {
  if (alpha + beta > d) throw bad_bounds("alpha + beta exceeds d");
  return std::min(p.value(), double_count(d, alpha, beta) + 1);
}

FpSet family_set(u64 k, Prime p) {
  if (k < 3) throw bad_bounds("family needs k >= 3");
  FpSet s(p);
  std::size_t expect = 0;
  auto put = [&](std::int64_t v) {
    s.insert(fp_normalize(v, p));
    ++expect;
  };
  put(1);
  put(-2);
  for (u64 j = 3; j <= k; ++j) put(static_cast<std::int64_t>(j));
  if (s.cardinality() != expect) throw bad_bounds("family elements collide mod p");
  if (!is_asymmetric(s)) throw not_asymmetric("family set is not asymmetric at this p");
  return s;
}

std::vector<std::pair<u64, u64>> special_pairs(u64 limit) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 k = 3;; ++k) {
    const u64 p = k * (k + 1) / 2 - 4;
    if (p >= limit) break;
    if (p > 2 && is_prime(p)) out.emplace_back(k, p);
  }
  return out;
}

DoubleCheck check_double(const FpSet& a, u64 alpha, u64 beta) {
  if (!is_asymmetric(a)) throw not_asymmetric();
  if (alpha + beta > a.cardinality()) throw bad_bounds("alpha + beta exceeds |A|");
  DoubleCheck c;
  c.bound = conj_bound(a.cardinality(), alpha, beta, a.prime());
  c.observed = sigma_double(a, alpha, beta).cardinality();
  c.holds = c.observed >= c.bound;
  return c;
}

SearchReport search_exhaustive(Prime p, u64 max_instances, unsigned workers) {
  if (p.value() > 31) throw space_too_large("exhaustive search supports p <= 31");
  const auto t0 = Clock::now();
  SearchReport rep;
  rep.p = p.value();
  rep.mode = "exhaustive";

  if (p.value() == 2) {
    rep.sets_checked = 1;  // only the empty set
    rep.instances_checked = 1;
    rep.elapsed_ms = ms_since(t0);
    return rep;
  }

  const unsigned pv = static_cast<unsigned>(p.value());
  const unsigned q = (pv - 1) / 2;
  const u64 ncodes = pow3(q);
  if (ncodes * ((q + 1) * (q + 2) / 2) > max_instances) throw space_too_large("search enumeration too large");
  const auto family = family_dilation_masks(p);

  auto parts = run_chunked<Partial>(ncodes, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    std::array<u32, 33> rows;
    for (u64 code = lo; code < hi; ++code) {
      const u32 set = decode_asymmetric(code, q, pv);
      unsigned card = 0;
      subsum_rows_mask(set, pv, rows, card);
      ++out.sets;
      scan_pairs(set, card, rows, p, family, out);
    }
    return out;
  });
  for (auto& part : parts) {
    rep.sets_checked += part.sets;
    rep.instances_checked += part.instances;
    for (auto& h : part.hits) rep.hits.push_back(std::move(h));
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

SearchReport search_sampled(Prime p, u64 samples, u64 seed, unsigned workers) {
  const auto t0 = Clock::now();
  SearchReport rep;
  rep.p = p.value();
  rep.mode = "random";

  const u64 q = (p.value() - 1) / 2;
  const u64 cap = std::min<u64>(q, 24);

  auto parts = run_chunked<Partial>(samples, workers, [&](u64 lo, u64 hi) -> Partial {
    Partial out;
    for (u64 i = lo; i < hi; ++i) {
      SplitMix64 rng = SplitMix64::stream(seed, i);
      ++out.sets;
      FpSet a(p);
      if (cap) {
        const u64 size = 1 + rng.below(cap);
        FpSet used(p);
        u64 have = 0;
        while (have < size) {
          const u64 x = 1 + rng.below(q);
          if (used.contains(x)) continue;
          used.insert(x);
          a.insert(rng.below(2) ? x : p.value() - x);
          ++have;
        }
      }
      const auto t = SubsumTable::build(a);
      const u64 d = t.max_terms();
      for (u64 alpha = 0; alpha <= d; ++alpha) {
        for (u64 beta = 0; alpha + beta <= d; ++beta) {
          ++out.instances;
          const u64 bound = std::min(p.value(), double_count(d, alpha, beta) + 1);
          const u64 obs = t.union_rows(alpha, d - beta).cardinality();
          if (obs < bound) {
            ConjectureHit hit;
            hit.set = a.members();
            hit.alpha = alpha;
            hit.beta = beta;
            hit.observed = obs;
            hit.bound = bound;
            hit.matches_known_family = false;
            if (p.value() <= 31) {
              u32 mask = 0;
              for (u64 x : a.members()) mask |= u32(1) << x;
              const auto family = family_dilation_masks(p);
              hit.matches_known_family = std::binary_search(family.begin(), family.end(), mask);
            }
            out.hits.push_back(std::move(hit));
          }
        }
      }
    }
    return out;
  });
  for (auto& part : parts) {
    rep.sets_checked += part.sets;
    rep.instances_checked += part.instances;
    for (auto& h : part.hits) rep.hits.push_back(std::move(h));
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

}  // namespace cnslab
