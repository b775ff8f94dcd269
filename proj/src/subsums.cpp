#include "cnslab/subsums.hpp"

#include <algorithm>
#include <bit>

namespace cnslab {

namespace {
using u64 = std::uint64_t;
constexpr unsigned kWordBits = 64;
}  // namespace

FpSet::FpSet(Prime p) : p_(p), w_((p.value() + kWordBits - 1) / kWordBits, 0) {}

FpSet FpSet::singleton(Prime p, u64 x) {
  FpSet s(p);
  s.insert(x % p.value());
  return s;
}

FpSet FpSet::full(Prime p) {
  FpSet s(p);
  for (auto& w : s.w_) w = ~u64(0);
  const unsigned top = p.value() % kWordBits;
  if (top) s.w_.back() &= (u64(1) << top) - 1;
  return s;
}

FpSet FpSet::from_ints(Prime p, std::span<const std::int64_t> xs) {
  FpSet s(p);
  for (auto x : xs) s.insert(fp_normalize(x, p));
  return s;
}

FpSet FpSet::interval(Prime p, std::int64_t lo, std::int64_t hi) {
  FpSet s(p);
  for (std::int64_t x = lo; x <= hi; ++x) s.insert(fp_normalize(x, p));
  return s;
}

void FpSet::check_context(const FpSet& o) const {
  if (p_ != o.p_) throw context_mismatch();
}

bool FpSet::contains(u64 x) const { return (w_[x / kWordBits] >> (x % kWordBits)) & 1; }

void FpSet::insert(u64 x) { w_[x / kWordBits] |= u64(1) << (x % kWordBits); }

void FpSet::erase(u64 x) { w_[x / kWordBits] &= ~(u64(1) << (x % kWordBits)); }

std::size_t FpSet::cardinality() const {
  std::size_t n = 0;
  for (u64 w : w_) n += std::popcount(w);
  return n;
}

std::vector<u64> FpSet::members() const {
  std::vector<u64> out;
  out.reserve(cardinality());
  for (std::size_t i = 0; i < w_.size(); ++i) {
    u64 w = w_[i];
    while (w) {
      out.push_back(i * kWordBits + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

// Rotation of the p-bit field by a: target = (src << a | src >> (p-a)) mod 2^p.
// Both shift images stay within the word vector because src has no bits at
// position p or above.
void FpSet::or_shifted(const FpSet& src, u64 a) {
  check_context(src);
  const u64 p = p_.value();
  a %= p;
  if (a == 0) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= src.w_[i];
    return;
  }
  const std::size_t nw = w_.size();
  const unsigned top = p % kWordBits;
  const u64 top_mask = top ? (u64(1) << top) - 1 : ~u64(0);

  auto shl_word = [&](std::size_t i, u64 k) -> u64 {
    // word i of (src << k)
    const std::size_t ws = k / kWordBits;
    const unsigned bs = k % kWordBits;
    u64 v = 0;
    if (i >= ws) {
      v = src.w_[i - ws] << bs;
      if (bs && i >= ws + 1) v |= src.w_[i - ws - 1] >> (kWordBits - bs);
    }
    return v;
  };
  auto shr_word = [&](std::size_t i, u64 k) -> u64 {
    // word i of (src >> k)
    const std::size_t ws = k / kWordBits;
    const unsigned bs = k % kWordBits;
    u64 v = 0;
    if (i + ws < nw) {
      v = src.w_[i + ws] >> bs;
      if (bs && i + ws + 1 < nw) v |= src.w_[i + ws + 1] << (kWordBits - bs);
    }
    return v;
  };

  const u64 back = p - a;
  for (std::size_t i = 0; i < nw; ++i) {
    u64 v = shl_word(i, a) | shr_word(i, back);
    if (i + 1 == nw) v &= top_mask;
    w_[i] |= v;
  }
}

FpSet FpSet::shifted(u64 a) const {
  FpSet out(p_);
  out.or_shifted(*this, a);
  return out;
}

FpSet FpSet::negated() const {
  FpSet out(p_);
  for (u64 x : members()) out.insert(fp_neg(x, p_));
  return out;
}

FpSet FpSet::dilated(u64 lambda) const {
  lambda %= p_.value();
  if (lambda == 0) throw zero_inverse("dilation factor must be nonzero");
  FpSet out(p_);
  for (u64 x : members()) out.insert(fp_mul(x, lambda, p_));
  return out;
}

u64 FpSet::element_sum() const {
  u64 s = 0;
  for (u64 x : members()) s = fp_add(s, x, p_);
  return s;
}

FpSet& FpSet::operator|=(const FpSet& o) {
  check_context(o);
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

FpSet& FpSet::operator&=(const FpSet& o) {
  check_context(o);
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

bool FpSet::operator==(const FpSet& o) const { return p_ == o.p_ && w_ == o.w_; }

bool FpSet::is_subset_of(const FpSet& o) const {
  check_context(o);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] & ~o.w_[i]) return false;
  }
  return true;
}

FpSet sumset(const FpSet& a, const FpSet& b) {
  if (a.prime() != b.prime()) throw context_mismatch();
  FpSet out(a.prime());
  for (u64 x : a.members()) out.or_shifted(b, x);
  return out;
}

FpSet restricted_sumset(const FpSet& a, const FpSet& b) {
  if (a.prime() != b.prime()) throw context_mismatch();
  FpSet out(a.prime());
  for (u64 x : a.members()) {
    FpSet bb = b;
    bb.erase(x);  // forbid the diagonal pair (x, x)
    out.or_shifted(bb, x);
  }
  return out;
}

bool is_asymmetric(const FpSet& a) {
  for (u64 x : a.members()) {
    if (a.contains(fp_neg(x, a.prime()))) return false;
  }
  return true;
}

SubsumTable SubsumTable::build(const FpSet& a) {
  SubsumTable t(a);
  const auto elems = a.members();
  const std::size_t d = elems.size();
  t.rows_.assign(d + 1, FpSet(a.prime()));
  t.rows_[0].insert(0);
  // Process one element at a time; walking k downward keeps each element in
  // at most one chosen subset per row.
  std::size_t used = 0;
  for (u64 e : elems) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) t.rows_[k].or_shifted(t.rows_[k - 1], e);
  }
  return t;
}

const FpSet& SubsumTable::row(std::size_t k) const {
  if (k >= rows_.size()) throw bad_h("row index exceeds |A|");
  return rows_[k];
}

FpSet SubsumTable::union_rows(std::size_t lo, std::size_t hi) const {
  FpSet out(prime());
  hi = std::min(hi, rows_.size() - 1);
  for (std::size_t k = lo; k <= hi && k < rows_.size(); ++k) out |= rows_[k];
  return out;
}

FpSet hfold(const FpSet& a, std::size_t h) {
  if (h > a.cardinality()) throw bad_h("fold count exceeds |A|");
  return SubsumTable::build(a).row(h);
}

FpSet sigma_all(const FpSet& a) {
  auto t = SubsumTable::build(a);
  return t.union_rows(0, t.max_terms());
}

FpSet sigma_star(const FpSet& a) {
  auto t = SubsumTable::build(a);
  return t.union_rows(1, t.max_terms());  // empty set of terms excluded; empty A gives {}
}

FpSet sigma_lower(const FpSet& a, std::size_t alpha) {
  auto t = SubsumTable::build(a);
  if (alpha > t.max_terms()) throw bad_bounds("alpha exceeds |A|");
  return t.union_rows(alpha, t.max_terms());
}

FpSet sigma_upper(const FpSet& a, std::size_t alpha) {
  auto t = SubsumTable::build(a);
  if (alpha > t.max_terms()) throw bad_bounds("alpha exceeds |A|");
  return t.union_rows(0, t.max_terms() - alpha);
}

FpSet sigma_double(const FpSet& a, std::size_t alpha, std::size_t beta) {
  auto t = SubsumTable::build(a);
  if (alpha + beta > t.max_terms()) throw bad_bounds("alpha + beta exceeds |A|");
  return t.union_rows(alpha, t.max_terms() - beta);
}

}  // namespace cnslab
