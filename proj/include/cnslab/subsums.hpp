#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cnslab/fieldcore.hpp"

namespace cnslab {

// Subset of F_p stored as a p-bit vector.  All set operations stay inside
// one field; mixing fields raises context_mismatch.
class FpSet {
 public:
  explicit FpSet(Prime p);

  static FpSet singleton(Prime p, std::uint64_t x);
  static FpSet full(Prime p);
  // Normalizes arbitrary signed integers mod p; duplicates collapse.
  static FpSet from_ints(Prime p, std::span<const std::int64_t> xs);
  static FpSet interval(Prime p, std::int64_t lo, std::int64_t hi);  // {lo..hi} mod p

  Prime prime() const { return p_; }
  std::uint64_t order() const { return p_.value(); }

  bool contains(std::uint64_t x) const;
  void insert(std::uint64_t x);
  void erase(std::uint64_t x);
  std::size_t cardinality() const;
  bool empty() const { return cardinality() == 0; }
  std::vector<std::uint64_t> members() const;  // ascending residues

  // {x + a : x in this}; or_shifted ORs shift(src, a) into *this (src must be
  // a distinct object, which the subset-sum recurrence guarantees).
  FpSet shifted(std::uint64_t a) const;
  void or_shifted(const FpSet& src, std::uint64_t a);

  FpSet negated() const;                      // {-x}
  FpSet dilated(std::uint64_t lambda) const;  // {lambda * x}, lambda != 0
  std::uint64_t element_sum() const;          // sum of members mod p

  FpSet& operator|=(const FpSet& o);
  FpSet& operator&=(const FpSet& o);
  friend FpSet operator|(FpSet a, const FpSet& b) { return a |= b; }
  friend FpSet operator&(FpSet a, const FpSet& b) { return a &= b; }
  bool operator==(const FpSet& o) const;
  bool is_subset_of(const FpSet& o) const;

 private:
  Prime p_;
  std::vector<std::uint64_t> w_;
  void check_context(const FpSet& o) const;
};

// {a + b : a in A, b in B}; empty when either operand is empty.
FpSet sumset(const FpSet& a, const FpSet& b);

// {a + b : a in A, b in B, a != b}.
FpSet restricted_sumset(const FpSet& a, const FpSet& b);

// True when A and -A are disjoint (forces 0 not in A).
bool is_asymmetric(const FpSet& a);

// Sums of k-element subsets for every k at once: row k holds the sums over
// all k-subsets of A.  Built by the 0/1 knapsack recurrence with rows updated
// from high k to low so each element is used at most once.
class SubsumTable {
 public:
  static SubsumTable build(const FpSet& a);

  Prime prime() const { return source_.prime(); }
  const FpSet& source() const { return source_; }
  std::size_t max_terms() const { return rows_.size() - 1; }  // |A|
  const FpSet& row(std::size_t k) const;                      // k-subset sums

  // Union of rows lo..hi (inclusive, clamped to |A|); empty when lo > hi.
  FpSet union_rows(std::size_t lo, std::size_t hi) const;

 private:
  explicit SubsumTable(const FpSet& a) : source_(a) {}
  FpSet source_;
  std::vector<FpSet> rows_;
};

// Sums over h-element subsets of A.
FpSet hfold(const FpSet& a, std::size_t h);  // throws bad_h when h > |A|

FpSet sigma_all(const FpSet& a);                                   // every subset, including the empty sum
FpSet sigma_star(const FpSet& a);                                  // nonempty subsets
FpSet sigma_lower(const FpSet& a, std::size_t alpha);              // at least alpha terms
FpSet sigma_upper(const FpSet& a, std::size_t alpha);              // at most |A|-alpha terms
FpSet sigma_double(const FpSet& a, std::size_t alpha, std::size_t beta);  // alpha..|A|-beta terms

}  // namespace cnslab
