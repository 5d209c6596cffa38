#pragma once

#include <vector>

#include "hom.hpp"
#include "perm_group.hpp"

namespace forge
{

struct Quotient
{
  PermGroup group; // acts on the right cosets of the kernel
  GroupHom map;
  CosetTable cosets;
};

/// G/N realised on the right cosets Nx, numbered by least representative.
inline Quotient quotient_by_normal(PermGroup const &g, PermGroup const &n)
{
  require_subgroup(n, g, "quotient_by_normal");
  if (!is_normal(n, g))
    throw NotNormal("quotient_by_normal: subgroup is not normal");
  auto cosets = right_cosets(g, n);
  std::size_t const m = cosets.count();
  if (m > std::numeric_limits<point>::max())
    throw CapExceeded("quotient_by_normal: too many cosets");

  auto action = [&](Perm const &x) {
    std::vector<point> img(m);
    for (std::size_t j = 0; j < m; ++j)
      img[j] = static_cast<point>(cosets.coset_of[g.index_of(cosets.reps[j] * x)]);
    return Perm(std::move(img));
  };

  std::vector<Perm> gens;
  for (auto const &x : g.generators())
    gens.push_back(action(x));
  auto q = PermGroup::generate(m, gens);

  std::vector<std::uint32_t> per_coset(m);
  for (std::size_t j = 0; j < m; ++j)
    per_coset[j] = static_cast<std::uint32_t>(q.index_of(action(cosets.reps[j])));
  std::vector<std::uint32_t> table(g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    table[i] = per_coset[cosets.coset_of[i]];
  auto map = GroupHom::from_table(g, q, std::move(table));
  return {q, map, std::move(cosets)};
}

} // namespace forge
