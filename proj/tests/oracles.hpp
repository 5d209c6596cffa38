#pragma once

// Brute-force reference implementations used only by the tests. They work on
// raw image arrays and share no code with the library algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle
{

using Arr = std::vector<int>;

inline Arr mul(Arr const &a, Arr const &b) // apply a, then b
{
  Arr r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = b[a[i]];
  return r;
}

inline Arr inv(Arr const &a)
{
  Arr r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[a[i]] = static_cast<int>(i);
  return r;
}

inline Arr ident(std::size_t n)
{
  Arr r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

inline Arr conj(Arr const &x, Arr const &g) { return mul(mul(inv(g), x), g); }

inline std::size_t order(Arr const &a)
{
  Arr e = ident(a.size()), x = a;
  std::size_t k = 1;
  while (x != e) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

/// Naive closure: multiply everything by everything until stable.
inline std::set<Arr> closure(std::size_t n, std::vector<Arr> const &gens)
{
  std::set<Arr> s{ident(n)};
  std::vector<Arr> frontier{ident(n)};
  while (!frontier.empty()) {
    std::vector<Arr> next;
    for (auto const &x : frontier)
      for (auto const &g : gens) {
        auto y = mul(x, g);
        if (s.insert(y).second)
          next.push_back(y);
      }
    frontier = std::move(next);
  }
  return s;
}

inline bool subgroup_normalized_by(std::set<Arr> const &h, Arr const &g)
{
  for (auto const &x : h)
    if (!h.count(conj(x, g)))
      return false;
  return true;
}

inline std::set<Arr> conj_set(std::set<Arr> const &h, Arr const &g)
{
  std::set<Arr> r;
  for (auto const &x : h)
    r.insert(conj(x, g));
  return r;
}

/// Every element of the cyclic group <c> other than 1 moves every k != 1
/// of the cyclic group <k>: the definitional Frobenius condition.
inline bool fixed_point_free(Arr const &c, Arr const &k)
{
  std::size_t n = c.size();
  std::vector<Arr> cs, ks;
  for (Arr x = c; x != ident(n); x = mul(x, c))
    cs.push_back(x);
  for (Arr x = k; x != ident(n); x = mul(x, k))
    ks.push_back(x);
  for (auto const &a : cs)
    for (auto const &b : ks)
      if (mul(a, b) == mul(b, a))
        return false;
  return true;
}

inline std::vector<Arr> powers(Arr const &x)
{
  std::vector<Arr> out{ident(x.size())};
  for (Arr y = x; y != out.front(); y = mul(y, x))
    out.push_back(y);
  return out;
}

/// <c><k> is a C-Frobenius group with kernel <k>: c normalizes <k>, the two
/// cyclic groups meet trivially and c acts fixed-point-freely.
inline bool is_c_frobenius_pair(Arr const &c, Arr const &k)
{
  auto cs = powers(c), ks = powers(k);
  if (cs.size() < 2 || ks.size() < 2)
    return false;
  std::set<Arr> kset(ks.begin(), ks.end());
  if (!kset.count(conj(k, c)))
    return false;
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (kset.count(cs[i]))
      return false;
  return fixed_point_free(c, k);
}

/// Exhaustive search for any homomorphism-extension conflict: checks
/// f(xy) = f(x) f(y) for all pairs of a tabulated map.
inline bool is_hom(std::map<Arr, Arr> const &f)
{
  for (auto const &[x, fx] : f)
    for (auto const &[y, fy] : f) {
      auto it = f.find(mul(x, y));
      if (it == f.end() || it->second != mul(fx, fy))
        return false;
    }
  return true;
}

inline int det_mod(std::vector<std::vector<int>> m, int p)
{
  int n = static_cast<int>(m.size());
  long long det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] % p) {
        piv = r;
        break;
      }
    if (piv < 0)
      return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = (p - det) % p;
    }
    det = det * m[c][c] % p;
    long long invp = 1;
    for (int e = 0; e < p - 2; ++e)
      invp = invp * m[c][c] % p;
    for (int r = c + 1; r < n; ++r) {
      long long f = m[r][c] * invp % p;
      for (int k = c; k < n; ++k)
        m[r][k] = static_cast<int>(((m[r][k] - f * m[c][k]) % p + p) % p);
    }
  }
  return static_cast<int>(det % p);
}

/// Definitional C-Frobenius test on an explicit element set: c lies in h and
/// some k generates a normal subgroup of index |c| on which c acts
/// fixed-point-freely.
inline bool is_c_frobenius_set(std::set<Arr> const &h, Arr const &c)
{
  if (!h.count(c))
    return false;
  auto co = order(c);
  if (co < 2 || h.size() % co != 0)
    return false;
  auto n = h.size() / co;
  if (n < 2)
    return false;
  for (auto const &k : h) {
    if (order(k) != n)
      continue;
    auto kk = closure(k.size(), {k});
    bool normal = true;
    for (auto const &g : h)
      if (!subgroup_normalized_by(kk, g)) {
        normal = false;
        break;
      }
    if (normal && fixed_point_free(c, k))
      return true;
  }
  return false;
}

/// |HA| for subgroups given as element sets.
inline std::size_t product_size(std::set<Arr> const &h, std::set<Arr> const &a)
{
  std::set<Arr> out;
  for (auto const &x : h)
    for (auto const &y : a)
      out.insert(mul(x, y));
  return out.size();
}

} // namespace oracle
