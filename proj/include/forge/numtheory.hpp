#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "error.hpp"

namespace forge
{

using u64 = std::uint64_t;

inline bool is_prime(u64 n)
{
  if (n < 2)
    return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// Prime factorization, primes ascending.
inline std::map<u64, unsigned> factorize(u64 n)
{
  std::map<u64, unsigned> f;
  for (u64 d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  }
  if (n > 1)
    ++f[n];
  return f;
}

inline std::vector<u64> prime_divisors(u64 n)
{
  std::vector<u64> ps;
  for (auto const &[p, e] : factorize(n))
    ps.push_back(p);
  return ps;
}

/// Largest power of p dividing n.
inline u64 p_part(u64 n, u64 p)
{
  u64 r = 1;
  while (n != 0 && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_prime_power(u64 n)
{
  return n > 1 && factorize(n).size() == 1;
}

inline u64 mulmod(u64 a, u64 b, u64 m)
{
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m)
{
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1)
      r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Multiplicative order of a modulo m; throws if gcd(a, m) != 1.
inline u64 multiplicative_order(u64 a, u64 m)
{
  if (m == 1)
    return 1;
  a %= m;
  if (std::gcd(a, m) != 1)
    throw InvalidArgument("multiplicative_order: not a unit");
  u64 k = 1;
  u64 x = a;
  while (x != 1) {
    x = mulmod(x, a, m);
    ++k;
  }
  return k;
}

/// Least m in [2, n) whose multiplicative order modulo every prime-power
/// part of n is exactly c. Zero when no such m exists.
inline u64 least_frobenius_exponent(u64 c, u64 n)
{
  auto parts = factorize(n);
  for (u64 m = 2; m < n; ++m) {
    if (std::gcd(m, n) != 1)
      continue;
    bool ok = true;
    for (auto const &[p, e] : parts) {
      u64 q = 1;
      for (unsigned i = 0; i < e; ++i)
        q *= p;
      if (multiplicative_order(m % q, q) != c) {
        ok = false;
        break;
      }
    }
    if (ok)
      return m;
  }
  return 0;
}

/// Unique lift of a unit of order dividing p-1 modulo p to an element of
/// the same order modulo p^e.
inline u64 teichmuller_lift(u64 m, u64 p, unsigned e)
{
  u64 q = 1;
  for (unsigned i = 0; i < e; ++i)
    q *= p;
  u64 x = m % q;
  // x -> x^p converges to the Teichmueller representative in e steps.
  for (unsigned i = 0; i < e; ++i)
    x = powmod(x, p, q);
  return x;
}

/// Checks that |G| divides n! using Legendre's formula per prime.
inline bool divides_factorial(u64 order, u64 n)
{
  for (auto const &[p, e] : factorize(order)) {
    u64 count = 0;
    for (u64 pk = p; pk <= n; pk *= p) {
      count += n / pk;
      if (pk > n / p)
        break;
    }
    if (count < e)
      return false;
  }
  return true;
}

} // namespace forge
