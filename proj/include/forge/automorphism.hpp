#pragma once

#include <string>
#include <vector>

#include "caps.hpp"
#include "hom.hpp"
#include "normal.hpp"
#include "perm_group.hpp"

namespace forge
{

/// Greedy lexicographic generating tuple with redundant entries removed.
inline std::vector<Perm> irredundant_generators(PermGroup const &g)
{
  std::vector<Perm> gens;
  detail::ClosureBuilder b(g.degree(), caps().closure);
  for (auto const &x : g.elements()) {
    if (b.size() == g.order())
      break;
    if (!b.contains(x)) {
      b.extend(x);
      gens.push_back(x);
    }
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<Perm> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i)
        rest.push_back(gens[j]);
    if (PermGroup::generate(g.degree(), rest).order() == g.order())
      gens = std::move(rest);
    else
      ++i;
  }
  return gens;
}

/// All automorphisms of g, by backtracking over images of a fixed
/// generating tuple. Candidate images must match element order and
/// conjugacy class size; pairwise products must match in order too.
/// Results are in lexicographic order of the image tuple.
inline std::vector<GroupHom> automorphism_group(PermGroup const &g)
{
  if (g.order() > caps().automorphism)
    throw CapExceeded("automorphism_group: |G| = " + std::to_string(g.order()) +
                      " exceeds the cap of " + std::to_string(caps().automorphism));
  auto frame = irredundant_generators(g);
  auto frame_group = g.with_generators(frame);
  if (frame.empty())
    return {GroupHom::identity(frame_group)};

  std::vector<std::size_t> class_size(g.order());
  for (auto const &c : conjugacy_classes(g))
    for (auto m : c.members)
      class_size[m] = c.members.size();
  auto signature = [&](Perm const &x) {
    return std::pair{x.order(), class_size[g.index_of(x)]};
  };

  std::vector<std::vector<Perm const *>> candidates(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    auto sig = signature(frame[i]);
    for (auto const &y : g.elements())
      if (signature(y) == sig)
        candidates[i].push_back(&y);
  }

  std::vector<GroupHom> out;
  std::vector<Perm> chosen(frame.size());
  auto recurse = [&](auto &&self, std::size_t k) -> void {
    if (k == frame.size()) {
      try {
        auto h = GroupHom::from_generator_images(frame_group, frame_group, chosen);
        if (h.image().order() == g.order())
          out.push_back(std::move(h));
      } catch (NotAHom const &) {
      }
      return;
    }
    for (auto const *y : candidates[k]) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        ok = (frame[j] * frame[k]).order() == (chosen[j] * *y).order();
      if (!ok)
        continue;
      chosen[k] = *y;
      self(self, k + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

/// Fixed points of an automorphism, i.e. C_S(x).
inline PermGroup automorphism_centralizer(GroupHom const &x)
{
  auto const &s = x.source();
  std::vector<Perm> keep;
  for (std::size_t i = 0; i < s.order(); ++i)
    if (x.image_index(i) == i)
      keep.push_back(s.element(i));
  return PermGroup::from_elements(s.degree(), std::move(keep));
}

} // namespace forge
