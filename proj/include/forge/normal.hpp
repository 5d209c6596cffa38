#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "numtheory.hpp"
#include "perm_group.hpp"

namespace forge
{

/// Orbits of g acting by conjugation on the normal subgroup a. Members are
/// indices into a; orbits are listed by least element.
inline std::vector<ConjugacyClass> classes_under(PermGroup const &a, PermGroup const &g)
{
  std::vector<ConjugacyClass> out;
  std::vector<bool> seen(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (seen[i])
      continue;
    ConjugacyClass cls{a.element(i), {static_cast<std::uint32_t>(i)}};
    seen[i] = true;
    for (std::size_t k = 0; k < cls.members.size(); ++k) {
      for (auto const &t : g.generators()) {
        auto j = a.index_of(a.element(cls.members[k]).conjugate(t));
        ensure(j != npos, "classes_under: subgroup is not normal");
        if (!seen[j]) {
          seen[j] = true;
          cls.members.push_back(static_cast<std::uint32_t>(j));
        }
      }
    }
    out.push_back(std::move(cls));
  }
  return out;
}

namespace detail
{

// Normal closure of x in g, abandoned (nullopt) as soon as it contains one
// of the given normal subgroups that does not contain x.
inline std::optional<PermGroup> normal_closure_unless_above(PermGroup const &g, Perm const &x,
                                                            std::vector<PermGroup> const &known)
{
  std::vector<PermGroup const *> watch;
  for (auto const &n : known)
    if (!n.contains(x))
      watch.push_back(&n);
  detail::ClosureBuilder b(g.degree(), caps().closure);
  b.extend(x);
  auto above = [&] {
    for (auto const *n : watch) {
      if (n->order() >= b.size() || b.size() % n->order() != 0)
        continue;
      bool all = true;
      for (auto const &y : n->generators())
        if (!b.contains(y)) {
          all = false;
          break;
        }
      if (all)
        return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    for (auto const &t : g.generators()) {
      Perm y = b.generators()[i].conjugate(t);
      if (!b.contains(y)) {
        b.extend(y);
        if (above())
          return std::nullopt;
      }
    }
  }
  auto gens = b.generators();
  return make_group_unchecked(g.degree(), std::move(gens), b.take_elements());
}

} // namespace detail

/// Minimal normal subgroups of g contained in the normal subgroup a, sorted
/// by order and then by element list. Every minimal normal subgroup is the
/// normal closure of any of its elements of prime order.
inline std::vector<PermGroup> minimal_normal_subgroups_in(PermGroup const &g, PermGroup const &a)
{
  if (a.is_trivial())
    throw TrivialGroup("minimal_normal_subgroups: trivial group");
  auto classes = classes_under(a, g);
  std::vector<ConjugacyClass const *> reps;
  for (auto const &c : classes)
    if (is_prime(c.rep.order()))
      reps.push_back(&c);
  std::stable_sort(reps.begin(), reps.end(), [](auto const *x, auto const *y) {
    return x->members.size() < y->members.size();
  });

  std::vector<PermGroup> found;
  for (auto const *c : reps) {
    auto n = detail::normal_closure_unless_above(g, c->rep, found);
    if (!n)
      continue;
    bool seen = false;
    for (auto const &m : found)
      if (m == *n) {
        seen = true;
        break;
      }
    if (!seen)
      found.push_back(std::move(*n));
  }

  std::vector<PermGroup> minimal;
  for (auto const &n : found) {
    bool has_smaller = false;
    for (auto const &m : found)
      if (m.order() < n.order() && n.order() % m.order() == 0 && is_subgroup(m, n)) {
        has_smaller = true;
        break;
      }
    if (!has_smaller)
      minimal.push_back(n);
  }
  std::sort(minimal.begin(), minimal.end(),
            [](PermGroup const &x, PermGroup const &y) { return x.less_than(y); });
  return minimal;
}

inline std::vector<PermGroup> minimal_normal_subgroups(PermGroup const &g)
{
  return minimal_normal_subgroups_in(g, g);
}

} // namespace forge
