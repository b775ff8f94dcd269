#pragma once

#include <cstdint>
#include <optional>

#include "cnslab/fieldcore.hpp"

namespace cnslab {

// Closed-form value of a construction's certificate coefficient, kept exact
// and reduced mod p at the very end.  `residue` is empty exactly when the
// exact value has a pole at p (cannot happen for valid parameters, where the
// value is an integer, but the API reports it rather than assuming it).
struct ClosedFormResult {
  FactoredRational exact;
  std::optional<std::uint64_t> residue;
  bool p_integral() const { return residue.has_value(); }
};

// binomial(n + (m - delta) - 2, n - 1) mod p.
ClosedFormResult cd_closed(std::uint64_t n, std::uint64_t m, std::uint64_t delta, Prime p);

// (h(d-h))! * C(d-h+delta-1, delta) C(h, delta) / C(h(d-h), delta)
//   * h!! (d-h)!! / d!!      with n!! the superfactorial 0!*1!*...*(n-1)!.
ClosedFormResult dsh_closed(std::uint64_t d, std::uint64_t h, std::uint64_t delta, Prime p);

// 2^(m-delta) m! / C(m, delta)
//   * C(d-alpha+delta-1, delta) C(alpha+1, delta) C(d+alpha+1, delta) / C(2alpha+2, delta)
//   * alpha!! (d-alpha)!! (d+alpha+1)!! / (d!! (2d+1)!!)
//   * prod_{i=alpha+1}^{d} (2i-1)!     with m = d(d+1)/2 - alpha(alpha+1)/2.
ClosedFormResult main_closed(std::uint64_t d, std::uint64_t alpha, std::uint64_t delta, Prime p);

}  // namespace cnslab
