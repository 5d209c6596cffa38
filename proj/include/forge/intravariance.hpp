#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "automorphism.hpp"
#include "error.hpp"
#include "hom.hpp"
#include "numtheory.hpp"
#include "perm_group.hpp"
#include "sylow.hpp"

namespace forge
{

/// Something acting on G: an automorphism given as a hom G -> G, or a
/// permutation of G's points that normalizes G.
using Actor = std::variant<GroupHom, Perm>;

inline PermGroup act_on(Actor const &x, PermGroup const &h)
{
  std::vector<Perm> gens, elems;
  if (auto const *phi = std::get_if<GroupHom>(&x)) {
    for (auto const &y : h.generators())
      gens.push_back((*phi)(y));
    for (auto const &y : h.elements())
      elems.push_back((*phi)(y));
  } else {
    auto const &p = std::get<Perm>(x);
    for (auto const &y : h.generators())
      gens.push_back(y.conjugate(p));
    for (auto const &y : h.elements())
      elems.push_back(y.conjugate(p));
  }
  return make_group_unchecked(h.degree(), std::move(gens), std::move(elems));
}

struct IntravarianceWitness
{
  std::size_t actor = 0;
  PermGroup image; // H^x
  Perm g;          // H^x = H^g
};

struct IntravarianceCertificate
{
  PermGroup h;
  std::vector<IntravarianceWitness> witnesses;
};

struct IntravarianceRefusal
{
  std::size_t failing_actor = 0;
  PermGroup image;
};

using IntravarianceResult = std::variant<IntravarianceCertificate, IntravarianceRefusal>;

/// For each actor x, the lexicographically least g in G with H^x = H^g.
inline IntravarianceResult intravariance_check(PermGroup const &g, PermGroup const &h,
                                               std::vector<Actor> const &actors)
{
  require_subgroup(h, g, "intravariance_check");
  IntravarianceCertificate cert{h, {}};
  for (std::size_t i = 0; i < actors.size(); ++i) {
    auto image = act_on(actors[i], h);
    auto w = conjugating_element(g, h, image);
    if (!w)
      return IntravarianceRefusal{i, image};
    cert.witnesses.push_back({i, image, *w});
  }
  return cert;
}

/// Independent re-check of a certificate, element by element.
inline bool verify_intravariance(IntravarianceCertificate const &cert, std::vector<Actor> const &actors)
{
  for (auto const &w : cert.witnesses) {
    if (w.actor >= actors.size())
      return false;
    auto image = act_on(actors[w.actor], cert.h);
    if (!(image == conjugate(cert.h, w.g)))
      return false;
  }
  return true;
}

/// A Sylow subgroup of the normal subgroup S normalized by the r-subgroup R.
/// When r divides |S| the result is Q n S for a Sylow r-subgroup Q of G
/// containing R. Otherwise a prime p dividing |S| must be supplied; with P
/// a Sylow p-subgroup of S, G = S N_G(P) and a conjugate of R lies in a
/// Sylow r-subgroup of N_G(P); conjugating P back gives the answer.
inline PermGroup normalized_sylow(PermGroup const &g, PermGroup const &s, PermGroup const &r_group,
                                  u64 r, std::optional<u64> p = std::nullopt)
{
  require_subgroup(s, g, "normalized_sylow");
  require_subgroup(r_group, g, "normalized_sylow");
  if (!is_prime(r))
    throw BadPrime("normalized_sylow: r is not prime");
  if (!is_normal(s, g))
    throw HypothesisViolated("normalized_sylow: S is not normal in G");
  if (!is_p_group(r_group, r))
    throw HypothesisViolated("normalized_sylow: R is not an r-group");

  PermGroup result;
  if (s.order() % r == 0) {
    auto q = sylow_containing(g, r_group, r);
    result = intersection(q, s);
  } else if (p && is_prime(*p) && s.order() % *p == 0) {
    auto pp = sylow_subgroup(s, *p);
    auto n = normalizer(g, pp);
    auto qq = sylow_subgroup(n, r);
    std::optional<Perm> x;
    for (auto const &y : g.elements()) {
      bool inside = true;
      for (auto const &t : r_group.generators())
        if (!qq.contains(t.conjugate(y))) {
          inside = false;
          break;
        }
      if (inside) {
        x = y;
        break;
      }
    }
    ensure(x.has_value(), "normalized_sylow: no conjugate of R inside the Sylow subgroup of N_G(P)");
    result = conjugate(pp, x->inverse());
  } else {
    throw BadPrime("normalized_sylow: r does not divide |S| and no prime of |S| was supplied");
  }
  for (auto const &t : r_group.generators())
    ensure(normalizes(t, result), "normalized_sylow: R does not normalize the result");
  return result;
}

/// U = prod_Z U1^{z} over the right cosets Z of G1 = N_G(Q1).
struct ProductIntravariant
{
  PermGroup u;
  PermGroup g1;
  std::vector<Perm> reps;            // one per right coset of G1, in coset order
  std::vector<PermGroup> factors;    // Q1^{rep}
  std::vector<Perm> generator_witnesses; // a with U^g = U^a for each generator g of G
};

inline std::vector<Perm> default_representatives(PermGroup const &g, PermGroup const &g1)
{
  return right_cosets(g, g1).reps;
}

inline ProductIntravariant product_intravariant_subgroup(PermGroup const &g, PermGroup const &a,
                                                         PermGroup const &q1, PermGroup const &u1,
                                                         std::vector<Perm> reps = {})
{
  require_subgroup(a, g, "product_intravariant_subgroup");
  require_subgroup(q1, a, "product_intravariant_subgroup");
  require_subgroup(u1, q1, "product_intravariant_subgroup");
  if (!is_normal(a, g))
    throw HypothesisViolated("product_intravariant_subgroup: A is not normal in G");

  ProductIntravariant out;
  out.g1 = normalizer(g, q1);
  auto cosets = right_cosets(g, out.g1);
  if (reps.empty())
    reps = cosets.reps;
  if (reps.size() != cosets.count())
    throw InvalidArgument("product_intravariant_subgroup: need one representative per coset");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto idx = g.index_of(reps[i]);
    if (idx == npos || cosets.coset_of[idx] != i)
      throw InvalidArgument("product_intravariant_subgroup: representative not in its coset");
  }
  out.reps = reps;

  // A must be the internal direct product of the conjugates of Q1.
  std::size_t product = 1;
  for (auto const &z : reps) {
    out.factors.push_back(conjugate(q1, z));
    product *= q1.order();
  }
  for (std::size_t i = 0; i < out.factors.size(); ++i) {
    if (!is_subgroup(out.factors[i], a))
      throw NotDirectProduct("product_intravariant_subgroup: a conjugate of Q1 is not inside A");
    for (std::size_t j = i + 1; j < out.factors.size(); ++j) {
      if (intersection(out.factors[i], out.factors[j]).order() != 1)
        throw NotDirectProduct("product_intravariant_subgroup: factors intersect nontrivially");
      for (auto const &x : out.factors[i].generators())
        for (auto const &y : out.factors[j].generators())
          if (x * y != y * x)
            throw NotDirectProduct("product_intravariant_subgroup: factors do not commute");
    }
  }
  if (product != a.order())
    throw NotDirectProduct("product_intravariant_subgroup: order of the product differs from |A|");

  // U1 must be G1-intravariant in Q1; generators of G1 suffice.
  for (auto const &x : out.g1.generators()) {
    auto image = conjugate(u1, x);
    if (!conjugating_element(q1, u1, image))
      throw NotIntravariant("product_intravariant_subgroup: U1 is not G1-intravariant in Q1");
  }

  std::vector<Perm> ugens;
  for (auto const &z : reps)
    for (auto const &x : u1.generators())
      ugens.push_back(x.conjugate(z));
  out.u = PermGroup::generate(g.degree(), ugens);
  std::size_t u_order = 1;
  for (std::size_t i = 0; i < reps.size(); ++i)
    u_order *= u1.order();
  ensure(out.u.order() == u_order, "product_intravariant_subgroup: U is not the direct product of the conjugates of U1");

  // Witness for each generator g: a = prod_Z a_Z with
  // a_Z = z'^-1 b_Z z', z' the representative of Zg and U1^{z g z'^-1} = U1^{b_Z}.
  for (auto const &t : g.generators()) {
    Perm a_total = g.identity();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      auto j = cosets.coset_of[g.index_of(reps[i] * t)];
      Perm y = reps[i] * t * reps[j].inverse();
      auto b = conjugating_element(q1, u1, conjugate(u1, y));
      ensure(b.has_value(), "product_intravariant_subgroup: no b_Z in Q1");
      a_total = a_total * b->conjugate(reps[j]);
    }
    ensure(conjugate(out.u, t) == conjugate(out.u, a_total),
           "product_intravariant_subgroup: witness does not conjugate U correctly");
    out.generator_witnesses.push_back(a_total);
  }

  if (!is_normal(u1, q1))
    ensure(!is_normal(out.u, a), "product_intravariant_subgroup: U normal in A although U1 is not normal in Q1");
  return out;
}

/// Coset representatives making U C-invariant: per C-orbit on G/G1 a base
/// coset Z with C_Z normalizing U1^{z}, then z c^j for the other cosets of
/// the orbit.
inline std::vector<Perm> c_compatible_representatives(PermGroup const &g, PermGroup const &g1,
                                                      Perm const &c, PermGroup const &u1)
{
  require_subgroup(g1, g, "c_compatible_representatives");
  if (!g.contains(c))
    throw InvalidArgument("c_compatible_representatives: c is not in G");
  auto csub = cyclic_subgroup(c);
  auto c1 = intersection(csub, g1);
  for (auto const &x : c1.generators())
    if (!normalizes(x, u1))
      throw HypothesisViolated("c_compatible_representatives: U1 is not C1-invariant");

  auto cosets = right_cosets(g, g1);
  std::size_t const m = cosets.count();
  auto coset_of = [&](Perm const &x) { return cosets.coset_of[g.index_of(x)]; };
  auto const c_order = c.order();

  std::vector<std::optional<Perm>> reps(m);
  std::vector<bool> done(m);
  for (std::size_t start = 0; start < m; ++start) {
    if (done[start])
      continue;
    // The orbit of the coset under C, in the order Z, Zc, Zc^2, ...
    std::vector<std::size_t> orbit;
    Perm cj = g.identity();
    for (std::size_t j = 0; j < c_order; ++j, cj *= c) {
      auto k = coset_of(cosets.reps[start] * cj);
      if (std::find(orbit.begin(), orbit.end(), k) == orbit.end())
        orbit.push_back(k);
    }
    // Base coset: one containing an element of C, if any.
    std::optional<std::size_t> base;
    Perm base_rep;
    for (auto const &y : csub.elements()) {
      auto k = coset_of(y);
      if (std::find(orbit.begin(), orbit.end(), k) != orbit.end()) {
        base = k;
        base_rep = y;
        break;
      }
    }
    if (!base) {
      if (orbit.size() != c_order)
        throw HypothesisViolated("c_compatible_representatives: coset outside C G1 has nontrivial C-stabilizer");
      base = start;
      base_rep = cosets.reps[start];
    }
    Perm r = g.identity();
    for (std::size_t j = 0; j < orbit.size(); ++j, r *= c) {
      auto k = coset_of(base_rep * r);
      ensure(!done[k], "c_compatible_representatives: orbit bookkeeping");
      reps[k] = base_rep * r;
      done[k] = true;
    }
  }
  std::vector<Perm> out;
  for (auto &x : reps)
    out.push_back(*x);

  std::vector<Perm> ugens;
  for (auto const &z : out)
    for (auto const &x : u1.generators())
      ugens.push_back(x.conjugate(z));
  auto u = PermGroup::generate(g.degree(), ugens);
  ensure(normalizes(c, u), "c_compatible_representatives: U is not C-invariant");
  return out;
}

struct CentralizerReport
{
  std::size_t automorphisms = 0;
  std::size_t min_centralizer_order = 0;
  std::size_t trivial_centralizers = 0;
};

/// Checks that every automorphism of the nonsolvable group s has a
/// nontrivial centralizer in s.
inline CentralizerReport centralizer_nontrivial_check(PermGroup const &s)
{
  if (is_solvable(s))
    throw HypothesisViolated("centralizer_nontrivial_check: group is solvable");
  CentralizerReport r;
  r.min_centralizer_order = s.order();
  for (auto const &x : automorphism_group(s)) {
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < s.order(); ++i)
      fixed += x.image_index(i) == i;
    ++r.automorphisms;
    r.min_centralizer_order = std::min(r.min_centralizer_order, fixed);
    r.trivial_centralizers += fixed == 1;
  }
  return r;
}

} // namespace forge
