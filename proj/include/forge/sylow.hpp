#pragma once

#include "numtheory.hpp"
#include "perm_group.hpp"

namespace forge
{

/// Extends the p-subgroup r of g to a Sylow p-subgroup of g. At each step the
/// lexicographically least y outside P that normalizes P with y^p in P is
/// adjoined.
inline PermGroup sylow_containing(PermGroup const &g, PermGroup r, u64 p)
{
  if (!is_prime(p))
    throw InvalidArgument("sylow: p must be prime");
  if (!is_p_group(r, p))
    throw InvalidArgument("sylow: starting subgroup is not a p-group");
  auto const target = p_part(g.order(), p);
  while (r.order() < target) {
    bool grown = false;
    for (auto const &y : g.elements()) {
      if (r.contains(y) || !r.contains(y.pow(static_cast<long long>(p))) || !normalizes(y, r))
        continue;
      r = r.extended(y);
      grown = true;
      break;
    }
    ensure(grown, "sylow: no element extends a non-Sylow p-subgroup");
  }
  return r;
}

/// Sylow p-subgroup seeded by the least element of largest p-power order.
inline PermGroup sylow_subgroup(PermGroup const &g, u64 p)
{
  if (!is_prime(p))
    throw InvalidArgument("sylow: p must be prime");
  if (g.order() % p != 0)
    return PermGroup::trivial(g.degree());
  Perm const *best = nullptr;
  std::size_t best_order = 1;
  for (auto const &x : g.elements()) {
    auto o = x.order();
    if (o > best_order && p_part(o, p) == o) {
      best = &x;
      best_order = o;
    }
  }
  return sylow_containing(g, cyclic_subgroup(*best), p);
}

} // namespace forge
