#pragma once

// Brute-force references shared by the unit and acceptance suites.  These
// deliberately avoid the library's bit-vector and recurrence machinery: sums
// are enumerated subset by subset so the fast paths are checked against an
// independent computation.

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

// Per-cardinality subset sums of `elems` mod p via full 2^n enumeration.
// result[k] = sums over k-element subsets; requires |elems| <= 20.
inline std::vector<std::set<u64>> subset_sums(const std::vector<u64>& elems, u64 p) {
  const std::size_t n = elems.size();
  std::vector<std::set<u64>> rows(n + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    u64 s = 0;
    unsigned k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        s = (s + elems[i]) % p;
        ++k;
      }
    }
    rows[k].insert(s);
  }
  return rows;
}

inline std::set<u64> union_rows(const std::vector<std::set<u64>>& rows, std::size_t lo, std::size_t hi) {
  std::set<u64> out;
  for (std::size_t k = lo; k <= hi && k < rows.size(); ++k) out.insert(rows[k].begin(), rows[k].end());
  return out;
}

inline std::set<u64> pair_sumset(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  std::set<u64> out;
  for (u64 x : a) {
    for (u64 y : b) out.insert((x + y) % p);
  }
  return out;
}

inline std::set<u64> pair_sumset_restricted(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  std::set<u64> out;
  for (u64 x : a) {
    for (u64 y : b) {
      if (x != y) out.insert((x + y) % p);
    }
  }
  return out;
}

}  // namespace oracle
