#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "numtheory.hpp"
#include "perm_group.hpp"

namespace forge
{

inline Perm cycle_perm(std::size_t degree, std::vector<point> const &cycle)
{
  std::vector<point> img(degree);
  std::iota(img.begin(), img.end(), point{0});
  for (std::size_t i = 0; i < cycle.size(); ++i)
    img[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Perm(std::move(img));
}

inline PermGroup cyclic_group(std::size_t n)
{
  std::vector<point> c(n);
  std::iota(c.begin(), c.end(), point{0});
  return PermGroup::generate(n, {cycle_perm(n, c)});
}

inline PermGroup symmetric_group(std::size_t n)
{
  if (n == 1)
    return PermGroup::trivial(1);
  std::vector<point> c(n);
  std::iota(c.begin(), c.end(), point{0});
  return PermGroup::generate(n, {cycle_perm(n, {0, 1}), cycle_perm(n, c)});
}

inline PermGroup alternating_group(std::size_t n)
{
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k)
    gens.push_back(cycle_perm(n, {0, 1, static_cast<point>(k)}));
  return PermGroup::generate(n, gens);
}

/// Shifts a permutation of degree d into the block [offset, offset + d) of a
/// permutation of degree total.
inline Perm embed_perm(Perm const &x, std::size_t offset, std::size_t total)
{
  std::vector<point> img(total);
  std::iota(img.begin(), img.end(), point{0});
  for (std::size_t i = 0; i < x.degree(); ++i)
    img[offset + i] = static_cast<point>(offset + x[i]);
  return Perm(std::move(img));
}

/// Joins two permutations acting on disjoint point blocks.
inline Perm pair_perm(Perm const &a, Perm const &b)
{
  std::vector<point> img(a.degree() + b.degree());
  for (std::size_t i = 0; i < a.degree(); ++i)
    img[i] = a[i];
  for (std::size_t i = 0; i < b.degree(); ++i)
    img[a.degree() + i] = static_cast<point>(a.degree() + b[i]);
  return Perm(std::move(img));
}

inline PermGroup direct_product(PermGroup const &a, PermGroup const &b,
                                std::size_t cap = caps().closure)
{
  std::size_t n = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (auto const &x : a.generators())
    gens.push_back(embed_perm(x, 0, n));
  for (auto const &x : b.generators())
    gens.push_back(embed_perm(x, a.degree(), n));
  return PermGroup::generate(n, gens, cap);
}

/// Permutes t blocks of size m according to s (a permutation of degree t).
inline Perm block_perm(Perm const &s, std::size_t m)
{
  std::vector<point> img(s.degree() * m);
  for (std::size_t b = 0; b < s.degree(); ++b)
    for (std::size_t i = 0; i < m; ++i)
      img[b * m + i] = static_cast<point>(s[b] * m + i);
  return Perm(std::move(img));
}

/// Applies x_b inside block b for each of the t blocks of size m.
inline Perm blockwise_perm(std::vector<Perm> const &xs)
{
  std::size_t m = xs.front().degree();
  std::vector<point> img(xs.size() * m);
  for (std::size_t b = 0; b < xs.size(); ++b)
    for (std::size_t i = 0; i < m; ++i)
      img[b * m + i] = static_cast<point>(b * m + xs[b][i]);
  return Perm(std::move(img));
}

/// Imprimitive wreath product of base (degree m) by top (degree t).
inline PermGroup wreath_product(PermGroup const &base, PermGroup const &top,
                                std::size_t cap = caps().closure)
{
  std::size_t m = base.degree(), t = top.degree();
  std::vector<Perm> gens;
  for (std::size_t b = 0; b < t; ++b)
    for (auto const &x : base.generators())
      gens.push_back(embed_perm(x, b * m, m * t));
  for (auto const &s : top.generators())
    gens.push_back(block_perm(s, m));
  return PermGroup::generate(m * t, gens, cap);
}

/// Z/c_order acting on a direct sum of cyclic groups Z/n_i, with the
/// generator c acting on the i-th summand as multiplication by m_i.
/// Realised on disjoint blocks of n_i points (affine action); when the
/// multipliers alone do not give c the full order, an extra c_order-cycle
/// block is appended.
struct SemidirectData
{
  PermGroup group;
  Perm c;
  std::vector<Perm> translations; // one per summand
};

inline SemidirectData semidirect_blocks(std::size_t c_order,
                                        std::vector<std::pair<std::size_t, std::size_t>> const &summands,
                                        std::size_t cap = caps().closure)
{
  std::size_t act = 1, degree = 0;
  for (auto const &[n, m] : summands) {
    if (std::gcd(m, n) != 1)
      throw InvalidArgument("semidirect_blocks: multiplier must be a unit");
    auto o = n == 1 ? 1 : multiplicative_order(m, n);
    if (c_order % o != 0)
      throw InvalidArgument("semidirect_blocks: multiplier order must divide |C|");
    act = std::lcm(act, o);
    degree += n;
  }
  bool extra = act != c_order;
  if (extra)
    degree += c_order;

  std::vector<point> cimg(degree);
  std::vector<Perm> translations;
  std::size_t off = 0;
  for (auto const &[n, m] : summands) {
    std::vector<point> t(degree);
    std::iota(t.begin(), t.end(), point{0});
    for (std::size_t x = 0; x < n; ++x) {
      cimg[off + x] = static_cast<point>(off + (x * m) % n);
      t[off + x] = static_cast<point>(off + (x + 1) % n);
    }
    translations.emplace_back(std::move(t));
    off += n;
  }
  std::iota(cimg.begin() + static_cast<long>(off), cimg.end(), static_cast<point>(off));
  if (extra)
    for (std::size_t x = 0; x < c_order; ++x)
      cimg[off + x] = static_cast<point>(off + (x + 1) % c_order);
  Perm c(std::move(cimg));
  std::vector<Perm> gens{c};
  gens.insert(gens.end(), translations.begin(), translations.end());
  return {PermGroup::generate(degree, gens, cap), c, translations};
}

/// Z/n x| Z/c in its affine action on n points, x -> m x (+1 for the
/// translation). The multiplier must have order exactly c modulo n.
inline SemidirectData affine_group(std::size_t c_order, std::size_t n, std::size_t m)
{
  return semidirect_blocks(c_order, {{n, m}});
}

} // namespace forge
