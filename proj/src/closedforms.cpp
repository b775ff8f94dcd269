#include "cnslab/closedforms.hpp"

#include <algorithm>

#include "cnslab/constructions.hpp"

namespace cnslab {

namespace {

using u64 = std::uint64_t;
using FR = FactoredRational;

ClosedFormResult finish(FR exact, Prime p) {
  ClosedFormResult res;
  res.exact = std::move(exact);
  try {
    res.residue = res.exact.reduce_mod(p);
  } catch (const not_p_integral&) {
    res.residue = std::nullopt;
  }
  return res;
}

std::int64_t i64(u64 v) { return static_cast<std::int64_t>(v); }

}  // namespace

ClosedFormResult cd_closed(u64 n, u64 m, u64 delta, Prime p) {
  if (n < 1 || m < 1) throw bad_bounds("need n, m >= 1");
  if (delta >= std::min(n, m)) throw delta_too_large();
  return finish(binomial_factored(i64(n + (m - delta) - 2), n - 1), p);
}

ClosedFormResult dsh_closed(u64 d, u64 h, u64 delta, Prime p) {
  if (h < 1 || h > d) throw bad_bounds("need 1 <= h <= d");
  if (delta >= h || delta > h * (d - h)) throw delta_too_large();
  FR c = factorial_factored(h * (d - h));
  c *= binomial_factored(i64(d - h + delta) - 1, delta);
  c *= binomial_factored(i64(h), delta);
  c /= binomial_factored(i64(h * (d - h)), delta);
  c *= superfactorial_factored(h);
  c *= superfactorial_factored(d - h);
  c /= superfactorial_factored(d);
  return finish(std::move(c), p);
}

ClosedFormResult main_closed(u64 d, u64 alpha, u64 delta, Prime p) {
  if (p.value() == 2) throw bad_field();
  if (d < 1 || alpha > d) throw bad_bounds("need 1 <= d and alpha <= d");
  const u64 m = sum_count(d, alpha);
  if (delta > alpha || delta > m) throw delta_too_large();

  FR c = FR::power_of_two(i64(m - delta));
  c *= factorial_factored(m);
  c /= binomial_factored(i64(m), delta);
  c *= binomial_factored(i64(d - alpha + delta) - 1, delta);
  c *= binomial_factored(i64(alpha) + 1, delta);
  c *= binomial_factored(i64(d + alpha) + 1, delta);
  c /= binomial_factored(i64(2 * alpha) + 2, delta);
  c *= superfactorial_factored(alpha);
  c *= superfactorial_factored(d - alpha);
  c *= superfactorial_factored(d + alpha + 1);
  c /= superfactorial_factored(d);
  c /= superfactorial_factored(2 * d + 1);
  for (u64 i = alpha + 1; i <= d; ++i) c *= factorial_factored(2 * i - 1);
  return finish(std::move(c), p);
}

}  // namespace cnslab
