#include "cnslab/fieldcore.hpp"

#include <algorithm>
#include <vector>

namespace cnslab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(u128(a) * b % n); }

u64 powmod(u64 base, u64 exp, u64 n) {
  u64 r = 1 % n;
  base %= n;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set decides primality for all n < 3.3 * 10^24, hence for u64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Prime::Prime(u64 p) : p_(p) {
  if (p >= (u64(1) << 63)) throw not_prime("modulus too large (needs p < 2^63)");
  if (!is_prime(p)) throw not_prime("modulus " + std::to_string(p) + " is not prime");
}

u64 fp_normalize(std::int64_t x, Prime p) {
  const auto m = static_cast<std::int64_t>(p.value());
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 fp_add(u64 a, u64 b, Prime p) {
  u64 s = a + b;  // no overflow: residues < 2^63
  if (s >= p.value()) s -= p.value();
  return s;
}

u64 fp_sub(u64 a, u64 b, Prime p) { return a >= b ? a - b : a + p.value() - b; }

u64 fp_neg(u64 a, Prime p) { return a == 0 ? 0 : p.value() - a; }

u64 fp_mul(u64 a, u64 b, Prime p) { return mulmod(a, b, p.value()); }

u64 fp_pow(u64 base, u64 exp, Prime p) { return powmod(base, exp, p.value()); }

u64 fp_inv(u64 a, Prime p) {
  a %= p.value();
  if (a == 0) throw zero_inverse();
  return powmod(a, p.value() - 2, p.value());
}

FactoredRational FactoredRational::one() {
  FactoredRational r;
  r.sign_ = 1;
  return r;
}

void FactoredRational::bump(u64 q, std::int64_t by) {
  auto it = exp_.find(q);
  if (it == exp_.end()) {
    if (by != 0) exp_.emplace(q, by);
  } else {
    it->second += by;
    if (it->second == 0) exp_.erase(it);
  }
}

FactoredRational FactoredRational::from_integer(std::int64_t v) {
  FactoredRational r;
  if (v == 0) return r;
  r.sign_ = v < 0 ? -1 : 1;
  u64 n = v < 0 ? u64(-(v + 1)) + 1 : u64(v);
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      r.bump(q, 1);
      n /= q;
    }
  }
  if (n > 1) r.bump(n, 1);
  return r;
}

FactoredRational FactoredRational::power_of_two(std::int64_t e) {
  FactoredRational r = one();
  r.bump(2, e);
  return r;
}

bool FactoredRational::is_integer() const {
  for (const auto& [q, e] : exp_) {
    (void)q;
    if (e < 0) return false;
  }
  return true;
}

FactoredRational& FactoredRational::operator*=(const FactoredRational& o) {
  if (sign_ == 0 || o.sign_ == 0) {
    sign_ = 0;
    exp_.clear();
    return *this;
  }
  sign_ *= o.sign_;
  for (const auto& [q, e] : o.exp_) bump(q, e);
  return *this;
}

FactoredRational& FactoredRational::operator/=(const FactoredRational& o) {
  if (o.sign_ == 0) throw division_by_zero();
  if (sign_ == 0) return *this;
  sign_ *= o.sign_;
  for (const auto& [q, e] : o.exp_) bump(q, -e);
  return *this;
}

FactoredRational FactoredRational::pow(std::int64_t e) const {
  if (sign_ == 0) {
    if (e < 0) throw division_by_zero("0 raised to a negative power");
    return e == 0 ? one() : FactoredRational();
  }
  FactoredRational r = one();
  r.sign_ = (sign_ < 0 && (e & 1)) ? -1 : 1;
  for (const auto& [q, ex] : exp_) r.bump(q, ex * e);
  return r;
}

u64 FactoredRational::reduce_mod(Prime p) const {
  if (sign_ == 0) return 0;
  u64 r = 1;
  for (const auto& [q, e] : exp_) {
    if (q == p.value()) {
      if (e < 0) throw not_p_integral();
      return 0;  // positive power of p
    }
    // q is invertible mod p, so exponents reduce mod p-1 (Fermat).
    const u64 m = p.value() - 1;
    u64 em = m == 0 ? 0 : static_cast<u64>(((e % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) % static_cast<std::int64_t>(m));
    r = mulmod(r, powmod(q % p.value(), em, p.value()), p.value());
  }
  return sign_ < 0 ? fp_neg(r, p) : r;
}

std::optional<std::int64_t> FactoredRational::to_int64() const {
  if (sign_ == 0) return 0;
  if (!is_integer()) return std::nullopt;
  u128 acc = 1;
  for (const auto& [q, e] : exp_) {
    for (std::int64_t i = 0; i < e; ++i) {
      acc *= q;
      if (acc > u128(INT64_MAX)) return std::nullopt;
    }
  }
  auto v = static_cast<std::int64_t>(acc);
  return sign_ < 0 ? -v : v;
}

std::string FactoredRational::to_string() const {
  if (sign_ == 0) return "0";
  std::string s = sign_ < 0 ? "-" : "";
  if (exp_.empty()) return s + "1";
  bool first = true;
  for (const auto& [q, e] : exp_) {
    if (!first) s += "*";
    first = false;
    s += std::to_string(q);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

namespace {

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (u64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

}  // namespace

FactoredRational factorial_factored(u64 n) {
  FactoredRational r = FactoredRational::one();
  for (u64 q : primes_up_to(n)) {
    std::int64_t e = 0;
    for (u64 qq = q; qq <= n; qq *= q) {
      e += static_cast<std::int64_t>(n / qq);
      if (qq > n / q) break;  // avoid qq overflow
    }
    r.bump(q, e);
  }
  return r;
}

FactoredRational superfactorial_factored(u64 n) {
  FactoredRational r = FactoredRational::one();
  for (u64 i = 0; i < n; ++i) r *= factorial_factored(i);
  return r;
}

FactoredRational binomial_factored(std::int64_t n, u64 k) {
  if (k == 0) return FactoredRational::one();
  if (n < 0) throw bad_bounds("binomial with negative upper index");
  const u64 un = static_cast<u64>(n);
  if (un < k) return FactoredRational();
  return factorial_factored(un) / (factorial_factored(k) * factorial_factored(un - k));
}

}  // namespace cnslab
