#pragma once

#include <utility>
#include <vector>

#include "field.hpp"

namespace forge
{

/// Polynomial over a finite field, coefficients from low to high degree,
/// with no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<fe>;

inline void trim(Poly &a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline long degree(Poly const &a) { return static_cast<long>(a.size()) - 1; }

inline Poly poly_add(GaloisField const &F, Poly const &a, Poly const &b)
{
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

inline Poly poly_sub(GaloisField const &F, Poly const &a, Poly const &b)
{
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

inline Poly poly_mul(GaloisField const &F, Poly const &a, Poly const &b)
{
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

/// (quotient, remainder)
inline std::pair<Poly, Poly> poly_divmod(GaloisField const &F, Poly a, Poly const &b)
{
  if (b.empty())
    throw InvalidArgument("poly: division by zero");
  trim(a);
  Poly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  fe lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    fe f = F.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(f, b[i]));
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

inline Poly poly_monic(GaloisField const &F, Poly a)
{
  trim(a);
  if (a.empty())
    return a;
  fe li = F.inv(a.back());
  for (auto &c : a)
    c = F.mul(c, li);
  return a;
}

inline Poly poly_gcd(GaloisField const &F, Poly a, Poly b)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

inline Poly poly_lcm(GaloisField const &F, Poly const &a, Poly const &b)
{
  auto g = poly_gcd(F, a, b);
  return poly_monic(F, poly_divmod(F, poly_mul(F, a, b), g).first);
}

inline Poly poly_derivative(GaloisField const &F, Poly const &a)
{
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    fe c = 0;
    for (std::size_t k = 0; k < i % F.p(); ++k)
      c = F.add(c, a[i]);
    r.push_back(c);
  }
  trim(r);
  return r;
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-q digits of code.
inline Poly monic_poly_from_code(GaloisField const &F, u64 code, unsigned deg)
{
  Poly f(deg + 1);
  for (unsigned i = 0; i < deg; ++i) {
    f[i] = static_cast<fe>(code % F.q());
    code /= F.q();
  }
  f[deg] = 1;
  return f;
}

/// Polynomial of degree < n whose coefficients are the base-q digits of code.
inline Poly poly_from_code(GaloisField const &F, u64 code, unsigned n)
{
  Poly f(n);
  for (unsigned i = 0; i < n; ++i) {
    f[i] = static_cast<fe>(code % F.q());
    code /= F.q();
  }
  trim(f);
  return f;
}

inline bool poly_is_irreducible(GaloisField const &F, Poly const &f)
{
  auto n = degree(f);
  if (n < 1)
    return false;
  for (unsigned d = 1; 2 * static_cast<long>(d) <= n; ++d) {
    u64 count = 1;
    for (unsigned i = 0; i < d; ++i)
      count *= F.q();
    for (u64 code = 0; code < count; ++code)
      if (poly_divmod(F, f, monic_poly_from_code(F, code, d)).second.empty())
        return false;
  }
  return true;
}

/// Monic irreducible factors with multiplicity, in order of degree and then
/// code.
inline std::vector<std::pair<Poly, unsigned>> poly_factor(GaloisField const &F, Poly f)
{
  f = poly_monic(F, f);
  std::vector<std::pair<Poly, unsigned>> out;
  for (unsigned d = 1; degree(f) > 0; ++d) {
    u64 count = 1;
    for (unsigned i = 0; i < d; ++i)
      count *= F.q();
    for (u64 code = 0; code < count && degree(f) >= static_cast<long>(d); ++code) {
      auto g = monic_poly_from_code(F, code, d);
      unsigned mult = 0;
      while (true) {
        auto [qt, r] = poly_divmod(F, f, g);
        if (!r.empty())
          break;
        f = qt;
        ++mult;
      }
      if (mult)
        out.emplace_back(g, mult);
    }
  }
  return out;
}

inline fe poly_eval(GaloisField const &F, Poly const &a, fe x)
{
  fe r = 0;
  for (std::size_t i = a.size(); i-- > 0;)
    r = F.add(F.mul(r, x), a[i]);
  return r;
}

} // namespace forge
