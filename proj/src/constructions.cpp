#include "cnslab/constructions.hpp"

#include <algorithm>
#include <limits>

namespace cnslab {

namespace {
using u64 = std::uint64_t;
using u32 = std::uint32_t;
}  // namespace

u64 ProofModel::grid_points() const {
  u64 n = 1;
  for (const auto& row : grid) {
    if (row.empty()) return 0;
    if (n > std::numeric_limits<u64>::max() / row.size()) return std::numeric_limits<u64>::max();
    n *= row.size();
  }
  return n;
}

u64 ProofModel::monomial_degree() const {
  u64 s = 0;
  for (u32 e : monomial) s += e;
  return s;
}

u64 ProofModel::factor_degree() const {
  const u64 v = vars();
  u64 deg = roots.size();
  if (vandermonde) deg += v * (v - 1) / 2;
  if (plus_cutoff) {
    // pairs i<j with j > cutoff (1-based): all pairs minus those inside 1..cutoff
    const u64 c = std::min<u64>(*plus_cutoff, v);
    deg += v * (v - 1) / 2 - c * (c - 1) / 2;
  }
  return deg;
}

u64 cd_delta(u64 n, u64 m, Prime p) {
  const u64 s = n + m;
  return s >= p.value() + 1 ? s - 1 - p.value() : 0;
}

u64 dsh_delta(u64 d, u64 h, Prime p) {
  const u64 s = h * (d - h) + 1;
  return s > p.value() ? s - p.value() : 0;
}

u64 sum_count(u64 d, u64 alpha) { return d * (d + 1) / 2 - alpha * (alpha + 1) / 2; }

u64 main_delta(u64 d, u64 alpha, Prime p) {
  const u64 m = sum_count(d, alpha);
  return m > p.value() - 1 ? m - (p.value() - 1) : 0;
}

namespace {

// Consecutive residues lo, lo+1, ..., lo+count-1 reduced mod p.
std::vector<u64> residue_run(std::int64_t lo, u64 count, Prime p) {
  std::vector<u64> out;
  out.reserve(count);
  for (u64 t = 0; t < count; ++t) out.push_back(fp_normalize(lo + static_cast<std::int64_t>(t), p));
  return out;
}

std::vector<u64> sorted(std::vector<u64> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

ProofModel cd_model(u32 n, u32 m, Prime p) {
  if (n < 1 || m < 1 || n > p.value() || m > p.value()) throw bad_bounds("need 1 <= n, m <= p");
  const u64 delta = cd_delta(n, m, p);
  if (delta >= std::min<u64>(n, m)) throw delta_too_large();
  const u64 md = m - delta;

  ProofModel mod{p, TheoremKind::CD, ModelSide::Q, n, m, delta, {}, {}, 0, false, std::nullopt, {}, {}};
  mod.grid.push_back(sorted(residue_run(1, n, p)));
  mod.grid.push_back(sorted(residue_run(1, md, p)));
  mod.roots = residue_run(2, n + md - 2, p);  // kills every sum 2..n+md-1 except the top
  mod.monomial = {n - 1, static_cast<u32>(md - 1)};
  mod.bstar = {fp_normalize(static_cast<std::int64_t>(n), p), fp_normalize(static_cast<std::int64_t>(md), p)};
  return mod;
}

ProofModel dsh_model(u32 d, u32 h, Prime p) {
  if (h < 1 || h > d) throw bad_bounds("need 1 <= h <= d");
  if (d >= p.value()) throw bad_bounds("need d < p");
  const u64 delta = dsh_delta(d, h, p);
  if (delta >= h) throw delta_too_large();

  ProofModel mod{p, TheoremKind::DSH, ModelSide::Q, d, h, delta, {}, {}, 0, true, std::nullopt, {}, {}};
  for (u64 i = 1; i <= h; ++i) {
    // Row i holds an initial interval; the first delta rows are one shorter,
    // which is what absorbs the wrap.
    const u64 len = (i <= delta) ? d - h + i - 1 : d - h + i;
    mod.grid.push_back(sorted(residue_run(1, len, p)));
    mod.monomial.push_back(static_cast<u32>(len - 1));
    mod.bstar.push_back(len % p.value());  // top of the row
  }
  const u64 nroots = h * (d - h) - delta;
  mod.roots = residue_run(static_cast<std::int64_t>(h * (h + 1) / 2), nroots, p);
  return mod;
}

ProofModel main_model(u32 d, u32 alpha, Prime p) {
  if (p.value() == 2) throw bad_field();
  if (d < 1 || alpha > d || d > (p.value() - 1) / 2) throw bad_bounds("need 1 <= d <= (p-1)/2 and alpha <= d");
  const u64 m = sum_count(d, alpha);
  const u64 delta = main_delta(d, alpha, p);
  if (delta > alpha) throw delta_too_large();

  ProofModel mod{p, TheoremKind::MAIN, ModelSide::Q, d, alpha, delta, {}, {}, 0, true, alpha, {}, {}};
  auto neg = [&](u64 j) { return p.value() - j; };  // residue of -j, j in 1..d

  for (u64 i = 1; i <= d; ++i) {
    std::vector<u64> row;
    if (i <= delta) {
      for (u64 j = alpha - i + 2; j <= d; ++j) row.push_back(neg(j));
    } else if (i <= alpha) {
      for (u64 j = alpha - i + 1; j <= d; ++j) row.push_back(neg(j));
    } else {
      for (u64 j = 1; j <= d; ++j) row.push_back(neg(j));
      for (u64 j = 1; j <= i; ++j) row.push_back(j);
    }
    mod.monomial.push_back(static_cast<u32>(row.size() - 1));
    mod.grid.push_back(sorted(std::move(row)));
  }

  // With the centering shift every admissible point has an even value
  // sum + shift = 2t, so the roots are the dilated run {2t : t < m - delta}.
  mod.shift = fp_normalize(static_cast<std::int64_t>(d * (d + 1) / 2), p);
  mod.roots.reserve(m - delta);
  for (u64 t = 0; t + delta < m; ++t) mod.roots.push_back((2 * t) % p.value());

  for (u64 i = 1; i <= delta; ++i) mod.bstar.push_back(neg(alpha + 2 - i));
  for (u64 i = delta + 1; i <= alpha; ++i) mod.bstar.push_back(neg(alpha - i + 1));
  if (alpha < d) {
    mod.bstar.push_back(alpha + 1 - delta);
    for (u64 i = alpha + 2; i <= d; ++i) mod.bstar.push_back(i);
  }
  return mod;
}

namespace {

// Shared tail for the instance-side builders.
void attach_cover(ProofModel& mod, const FpSet& cover, u64 required) {
  if (cover.cardinality() < required) {
    throw cover_too_small("cover has " + std::to_string(cover.cardinality()) + " elements, need at least " + std::to_string(required));
  }
  mod.roots = cover.members();
}

}  // namespace

ProofModel cd_p_side(const FpSet& a, const FpSet& b, const FpSet& cover) {
  if (a.prime() != b.prime() || a.prime() != cover.prime()) throw context_mismatch();
  const Prime p = a.prime();
  const u64 n = a.cardinality(), m = b.cardinality();
  if (n < 1 || m < 1) throw bad_bounds("both summand sets must be nonempty");
  const u64 delta = cd_delta(n, m, p);

  ProofModel mod{p, TheoremKind::CD, ModelSide::P, static_cast<u32>(n), static_cast<u32>(m),
                 delta, {}, {}, 0, false, std::nullopt, {}, {}};
  // Drop the delta largest residues of B; a sumset over the smaller grid is
  // still inside A + B, and the sizes now match the monomial exactly.
  auto bm = b.members();
  bm.resize(m - delta);
  mod.grid.push_back(a.members());
  mod.grid.push_back(std::move(bm));
  mod.monomial = {static_cast<u32>(n - 1), static_cast<u32>(m - delta - 1)};
  attach_cover(mod, cover, n + (m - delta) - 2);
  return mod;
}

ProofModel dsh_p_side(const FpSet& a, u32 h, const FpSet& cover) {
  if (a.prime() != cover.prime()) throw context_mismatch();
  const Prime p = a.prime();
  const u64 d = a.cardinality();
  if (h < 1 || h > d) throw bad_bounds("need 1 <= h <= |A|");
  const u64 delta = dsh_delta(d, h, p);
  if (delta >= h) throw delta_too_large();

  ProofModel mod{p, TheoremKind::DSH, ModelSide::P, static_cast<u32>(d), h,
                 delta, {}, {}, 0, true, std::nullopt, {}, {}};
  const auto elems = a.members();
  for (u64 i = 1; i <= h; ++i) {
    const u64 len = (i <= delta) ? d - h + i - 1 : d - h + i;
    mod.grid.emplace_back(elems.begin(), elems.begin() + len);
    mod.monomial.push_back(static_cast<u32>(len - 1));
  }
  attach_cover(mod, cover, h * (d - h) - delta);
  return mod;
}

ProofModel main_p_side(const FpSet& a, u32 alpha, const FpSet& cover) {
  if (a.prime() != cover.prime()) throw context_mismatch();
  const Prime p = a.prime();
  if (p.value() == 2) throw bad_field();
  if (!is_asymmetric(a)) throw not_asymmetric();
  const u64 d = a.cardinality();
  if (d < 1 || alpha > d) throw bad_bounds("need 1 <= |A| and alpha <= |A|");
  const u64 m = sum_count(d, alpha);
  const u64 delta = main_delta(d, alpha, p);
  if (delta > alpha) throw delta_too_large();

  // Write A = {2 a_1, ..., 2 a_d}; the grids live on the halved elements.
  const u64 half = fp_inv(2, p);
  std::vector<u64> ha;
  ha.reserve(d);
  for (u64 x : a.members()) ha.push_back(fp_mul(x, half, p));
  std::sort(ha.begin(), ha.end());

  ProofModel mod{p, TheoremKind::MAIN, ModelSide::P, static_cast<u32>(d), alpha,
                 delta, {}, {}, 0, true, alpha, {}, {}};
  u64 shift = 0;
  for (u64 x : ha) shift = fp_add(shift, x, p);
  mod.shift = shift;

  auto neg_of = [&](u64 j) { return fp_neg(ha[j - 1], p); };  // -a_j, 1-based
  for (u64 i = 1; i <= d; ++i) {
    std::vector<u64> row;
    if (i <= delta) {
      for (u64 j = alpha - i + 2; j <= d; ++j) row.push_back(neg_of(j));
    } else if (i <= alpha) {
      for (u64 j = alpha - i + 1; j <= d; ++j) row.push_back(neg_of(j));
    } else {
      for (u64 j = 1; j <= d; ++j) row.push_back(neg_of(j));
      for (u64 j = 1; j <= i; ++j) row.push_back(ha[j - 1]);
    }
    mod.monomial.push_back(static_cast<u32>(row.size() - 1));
    std::sort(row.begin(), row.end());
    mod.grid.push_back(std::move(row));
  }
  attach_cover(mod, cover, m - delta);
  return mod;
}

u64 eval_model(const ProofModel& m, std::span<const u64> point) {
  const Prime p = m.p;
  u64 s = m.shift;
  for (u64 x : point) s = fp_add(s, x, p);

  u64 prod = 1;
  for (u64 r : m.roots) {
    prod = fp_mul(prod, fp_sub(s, r, p), p);
    if (prod == 0) return 0;
  }
  const std::size_t v = point.size();
  if (m.vandermonde) {
    for (std::size_t i = 0; i < v && prod; ++i) {
      for (std::size_t j = i + 1; j < v; ++j) {
        prod = fp_mul(prod, fp_sub(point[j], point[i], p), p);
        if (prod == 0) return 0;
      }
    }
  }
  if (m.plus_cutoff) {
    const std::size_t cutoff = *m.plus_cutoff;  // plus factors only when 1-based j > cutoff
    for (std::size_t j = 1; j < v && prod; ++j) {
      if (j + 1 <= cutoff) continue;
      for (std::size_t i = 0; i < j; ++i) {
        prod = fp_mul(prod, fp_add(point[j], point[i], p), p);
        if (prod == 0) return 0;
      }
    }
  }
  return prod;
}

}  // namespace cnslab
