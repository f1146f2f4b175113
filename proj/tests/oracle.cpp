#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 addmod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  return b >= m - a ? b - (m - a) : a + b;
}

u64 submod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + m - b;
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_square(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  auto sq = [](u64 x) { return static_cast<u128>(x) * x; };
  while (r > 0 && sq(r) > n) --r;
  while (sq(r + 1) <= n) ++r;
  return sq(r) == n;
}

bool mr_base2(u64 n) {
  // n odd, n > 2
  u64 d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  u64 x = powmod(2, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::int64_t a, u64 n) {
  u64 aa;
  if (a < 0) {
    aa = n - (static_cast<u64>(-a) % n);
    if (aa == n) aa = 0;
  } else {
    aa = static_cast<u64>(a) % n;
  }
  int result = 1;
  while (aa != 0) {
    while ((aa & 1) == 0) {
      aa >>= 1;
      const u64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(aa, n);
    if (aa % 4 == 3 && n % 4 == 3) result = -result;
    aa %= n;
  }
  return n == 1 ? result : 0;
}

u64 signed_mod(std::int64_t v, u64 n) {
  if (v >= 0) return static_cast<u64>(v) % n;
  const u64 m = static_cast<u64>(-v) % n;
  return m == 0 ? 0 : n - m;
}

// (x + n)/2 mod n for odd n without 64-bit overflow.
u64 halve(u64 x, u64 n) {
  if ((x & 1) == 0) return x >> 1;
  return (x >> 1) + (n >> 1) + 1;
}

bool strong_lucas_prp(u64 n) {
  // n odd, n > 2, no factor below 60, not a perfect square.
  std::int64_t d = 5;
  while (true) {
    const int j = jacobi(d, n);
    if (j == -1) break;
    if (j == 0) return false;
    d = d > 0 ? -(d + 2) : -(d - 2);
  }
  const std::int64_t q = (1 - d) / 4;
  const u64 dm = signed_mod(d, n);
  const u64 qm = signed_mod(q, n);

  u64 k = n + 1;
  const int s = std::countr_zero(k);
  k >>= s;

  // Left-to-right binary chain for U_k, V_k, Q^k (P = 1).
  u64 u = 1, v = 1, qk = qm;
  const int top = 63 - std::countl_zero(k);
  for (int i = top - 1; i >= 0; --i) {
    // double: (U, V, Q^j) -> (UV, V^2 - 2Q^j, Q^2j)
    u = mulmod(u, v, n);
    v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
    qk = mulmod(qk, qk, n);
    if ((k >> i) & 1) {
      // increment: U' = (U + V)/2, V' = (D*U + V)/2 with P = 1
      const u64 nu = halve(addmod(u, v, n), n);
      const u64 nv = halve(addmod(mulmod(dm, u, n), v, n), n);
      u = nu;
      v = nv;
      qk = mulmod(qk, qm, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
    qk = mulmod(qk, qk, n);
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

bool trial_is_prime(u64 x) {
  if (x < 2) return false;
  if (x % 2 == 0) return x == 2;
  for (u64 d = 3; d * d <= x; d += 2)
    if (x % d == 0) return false;
  return true;
}

std::vector<u64> trial_primes_up_to(u64 limit) {
  std::vector<u64> out;
  for (u64 x = 2; x <= limit; ++x)
    if (trial_is_prime(x)) out.push_back(x);
  return out;
}

bool bpsw_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull}) {
    if (n % p == 0) return n == p;
  }
  if (n == ~static_cast<u64>(0)) return false;
  if (is_square(n)) return false;
  return mr_base2(n) && strong_lucas_prp(n);
}

bool lucas_lehmer_m61() {
  const u64 m = (1ull << 61) - 1;
  u64 s = 4;
  for (int i = 0; i < 59; ++i) s = submod(mulmod(s, s, m), 2, m);
  return s == 0;
}

gapkit::Rational mean_gap(u64 n, std::span<const u64> primes) {
  if (n < 1 || primes.size() < n + 1)
    throw std::invalid_argument("prime table too short");
  return gapkit::Rational(primes[n] - 2, n);
}

gapkit::Rational weighted_gap_sum(u64 n, std::span<const u64> primes) {
  if (n < 1 || primes.size() < n + 1)
    throw std::invalid_argument("prime table too short");
  gapkit::Rational sum = 0;
  for (u64 i = n; i >= 2; --i)
    sum += gapkit::Rational(primes[i] - primes[i - 1], i - 1);
  return sum;
}

gapkit::Rational tail_sum(u64 m, u64 n, std::span<const u64> primes) {
  if (m < 2 || m > n || primes.size() < n + 1)
    throw std::invalid_argument("bad tail range");
  gapkit::Rational sum = 0;
  for (u64 k = n; k >= m; --k)
    sum += mean_gap(k, primes) / (k - 1);
  return sum + gapkit::Rational(primes[n - 1] - 2, n) - mean_gap(m - 1, primes);
}

bool identities_hold(u64 m, u64 n, std::span<const u64> primes) {
  if (m < 2 || m > n || primes.size() < n + 1)
    throw std::invalid_argument("bad identity range");
  using gapkit::Rational;
  auto gap = [&](u64 k) { return primes[k] - primes[k - 1]; };

  Rational gap_side = 0, mean_side = 0, diff_side = 0;
  for (u64 k = n; k >= m; --k) {
    gap_side += Rational(gap(k), k - 1);
    mean_side += mean_gap(k, primes) / (k - 1);
    diff_side += (Rational(gap(k)) - mean_gap(k, primes)) / (k - 1);
  }
  const Rational pn_term(primes[n - 1] - 2, n);
  const Rational anchor = mean_gap(m - 1, primes);

  const bool id1 = gap_side == mean_gap(n, primes) - anchor + mean_side;
  const bool id2 =
      Rational(gap(n), n) == diff_side - pn_term + anchor;
  Rational short_gap_side = gap_side - Rational(gap(n), n - 1);
  const bool id3 = Rational(gap(n)) / (Rational(n) * (n - 1)) ==
                   mean_side - short_gap_side + pn_term - anchor;
  return id1 && id2 && id3;
}

std::vector<GapRow> record_gaps(std::span<const u64> primes) {
  std::vector<GapRow> out;
  u64 best = 0;
  for (u64 i = 1; i < primes.size(); ++i) {
    const u64 g = primes[i] - primes[i - 1];
    if (g > best) {
      best = g;
      out.push_back(GapRow{i, primes[i - 1], g});
    }
  }
  return out;
}

std::vector<GapRow> first_occurrences(std::span<const u64> primes) {
  std::vector<GapRow> out;
  for (u64 i = 1; i < primes.size(); ++i) {
    const u64 g = primes[i] - primes[i - 1];
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const GapRow& r) { return r.gap == g; });
    if (!seen) out.push_back(GapRow{i, primes[i - 1], g});
  }
  std::sort(out.begin(), out.end(),
            [](const GapRow& a, const GapRow& b) { return a.gap < b.gap; });
  return out;
}

}  // namespace oracle
