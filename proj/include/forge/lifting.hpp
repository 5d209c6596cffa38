#pragma once

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "frobenius.hpp"
#include "groups.hpp"
#include "hom.hpp"
#include "intravariance.hpp"
#include "linfield/canonical_form.hpp"
#include "normal.hpp"
#include "numtheory.hpp"
#include "perm_group.hpp"
#include "quotient.hpp"
#include "sylow.hpp"

namespace forge
{

enum class Strategy
{
  Base,
  MinimalNormalDescent,
  AbelianNontrivialAction,
  AbelianTrivialAction,
  PrimePowerSylow,
  FaithfulReduction,
  CaseI,
  CaseIII,
  CaseIIOracle,
  Oracle,
};

inline char const *to_string(Strategy s)
{
  switch (s) {
  case Strategy::Base: return "base";
  case Strategy::MinimalNormalDescent: return "minimal-normal-descent";
  case Strategy::AbelianNontrivialAction: return "abelian-nontrivial-action";
  case Strategy::AbelianTrivialAction: return "abelian-trivial-action";
  case Strategy::PrimePowerSylow: return "prime-power-sylow";
  case Strategy::FaithfulReduction: return "faithful-reduction";
  case Strategy::CaseI: return "case-I";
  case Strategy::CaseIII: return "case-III";
  case Strategy::CaseIIOracle: return "case-II-oracle";
  case Strategy::Oracle: return "oracle";
  }
  return "?";
}

struct TraceStep
{
  Strategy strategy;
  unsigned depth = 0;
  std::size_t group_order = 0;
  std::size_t normal_order = 0;
};

struct LiftOptions
{
  bool prime_power_fast_path = true;
  bool allow_oracle = true;
};

/// G with distinguished c, a normal subgroup A with C n A = 1, and the
/// recognised C-Frobenius quotient G/A.
struct LiftInstance
{
  CGroup g;
  PermGroup a;
  Quotient quotient;
  FrobeniusStructure structure;

  static LiftInstance make(CGroup g, PermGroup a)
  {
    require_subgroup(a, g.group(), "lift instance");
    if (!is_normal(a, g.group()))
      throw NotNormal("lift instance: A is not normal in G");
    if (intersection(g.c_subgroup(), a).order() != 1)
      throw HypothesisViolated("lift instance: C meets A nontrivially");
    auto q = quotient_by_normal(g.group(), a);
    auto s = require_frobenius(CGroup(q.group, q.map(g.c())), "lift instance: G/A");
    return LiftInstance{std::move(g), std::move(a), std::move(q), std::move(s)};
  }
};

struct LiftResult
{
  PermGroup h;
  FrobeniusStructure structure;
  std::vector<TraceStep> trace;
  std::optional<Perm> oracle_witness;
};

/// Independent check: H is C-Frobenius for the given c, lies in G and HA = G.
inline bool validate_lift(PermGroup const &g, PermGroup const &a, Perm const &c, PermGroup const &h)
{
  if (!is_subgroup(h, g) || !h.contains(c) || c.is_identity())
    return false;
  if (!std::holds_alternative<FrobeniusStructure>(is_c_frobenius(CGroup(h, c))))
    return false;
  return product_order(h, a) == g.order();
}

namespace detail
{

/// First k in lexicographic order with C<k> C-Frobenius and C<k>A = G.
inline std::optional<Perm> oracle_search(PermGroup const &g, Quotient const &q, FrobeniusStructure const &s,
                                         Perm const &c)
{
  auto const c_order = c.order();
  auto const kbar = s.kernel();
  std::vector<bool> generates_kbar(q.group.order());
  for (auto const &y : kbar.elements())
    if (y.order() == s.kernel_order)
      generates_kbar[q.group.index_of(y)] = true;

  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!generates_kbar[q.map.image_index(i)])
      continue;
    Perm const &k = g.element(i);
    auto m = conjugation_exponent(k, c);
    if (!m)
      continue;
    auto const n = k.order();
    // c^j acts on <k> as multiplication by m^j; it must move every k^e != 1.
    bool fpf = true;
    u64 mj = 1;
    for (u64 j = 1; j < c_order && fpf; ++j) {
      mj = mj * *m % n;
      for (u64 e = 1; e < n; ++e)
        if (e * mj % n == e) {
          fpf = false;
          break;
        }
    }
    if (!fpf)
      continue;
    return k;
  }
  return std::nullopt;
}

inline PermGroup c_times(Perm const &c, std::vector<Perm> const &ks, std::size_t degree)
{
  std::vector<Perm> gens{c};
  gens.insert(gens.end(), ks.begin(), ks.end());
  return PermGroup::generate(degree, gens);
}

/// Coordinates of an elementary abelian p-group over GF(p).
struct Coordinates
{
  std::vector<Perm> basis;
  std::vector<std::vector<fe>> coords; // by element index of the group
};

inline Coordinates coordinates(PermGroup const &a, u64 p)
{
  Coordinates out;
  PermGroup span = PermGroup::trivial(a.degree());
  for (auto const &x : a.elements())
    if (!span.contains(x)) {
      out.basis.push_back(x);
      span = span.extended(x);
    }
  auto const d = out.basis.size();
  out.coords.assign(a.order(), std::vector<fe>(d));
  std::vector<fe> v(d, 0);
  for (std::size_t n = 0; n < a.order(); ++n) {
    Perm x = a.identity();
    for (std::size_t i = 0; i < d; ++i)
      x *= out.basis[i].pow(v[i]);
    out.coords[a.index_of(x)] = v;
    for (std::size_t i = 0; i < d; ++i) {
      if (++v[i] < p)
        break;
      v[i] = 0;
    }
  }
  return out;
}

/// A is a free GF(p)[C]-module iff every invariant factor of c's action is x^|C| - 1.
inline bool is_free_c_module(PermGroup const &a, u64 p, Perm const &c, std::size_t c_order)
{
  auto co = coordinates(a, p);
  auto const d = co.basis.size();
  if (d % c_order != 0)
    return false;
  auto F = galois_field(static_cast<unsigned>(p));
  Matrix m(F, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto const &v = co.coords[a.index_of(co.basis[j].conjugate(c))];
    for (std::size_t i = 0; i < d; ++i)
      m(i, j) = v[i];
  }
  Poly target(c_order + 1, 0);
  target[0] = F->neg(1);
  target[c_order] = 1;
  for (auto const &f : rational_canonical_form(m).invariant_factors)
    if (f != target)
      return false;
  return true;
}

class Lifter
{
public:
  Lifter(LiftOptions opts, std::vector<TraceStep> &trace, std::optional<Perm> &witness)
      : opts_(opts), trace_(trace), witness_(witness)
  {
  }

  PermGroup lift(PermGroup const &g, PermGroup const &a, Perm const &c, unsigned depth)
  {
    if (a.is_trivial()) {
      note(Strategy::Base, depth, g, a);
      require_frobenius(CGroup(g, c), "lift: base case");
      return g;
    }

    // Descend to a minimal normal subgroup B of G inside A.
    auto b = minimal_normal_subgroups_in(g, a).front();
    if (b.order() != a.order()) {
      note(Strategy::MinimalNormalDescent, depth, g, a);
      auto q = quotient_by_normal(g, b);
      auto hbar = descend(g, a, q.group, q.map.image_of(a), q.map(c), depth);
      auto h0 = q.map.preimage(hbar);
      auto h = descend(g, a, h0, b, c, depth);
      ensure(product_order(h, a) == g.order(), "lift: HA = G after minimal normal descent");
      return h;
    }

    auto const p_of_a = factorize(a.order());
    if (is_abelian(a)) {
      ensure(p_of_a.size() == 1, "lift: abelian minimal normal subgroup is not a p-group");
      return elementary_abelian(g, a, c, depth);
    }

    auto q = quotient_by_normal(g, a);
    auto s = require_frobenius(CGroup(q.group, q.map(c)), "lift: G/A");
    auto const c_order = c.order();
    auto const c_primes = factorize(c_order);

    if (opts_.prime_power_fast_path && c_primes.size() == 1) {
      note(Strategy::PrimePowerSylow, depth, g, a);
      u64 r = c_primes.begin()->first;
      auto m = q.map.preimage(s.kernel());
      std::optional<u64> p;
      if (m.order() % r != 0)
        p = p_of_a.begin()->first;
      auto u = normalized_sylow(g, m, cyclic_subgroup(c), r, p);
      return descend_to_normalizer(g, a, c, u, depth);
    }

    // Reduce to G acting faithfully on A.
    auto kernel = centralizer(g, a);
    if (!kernel.is_trivial()) {
      note(Strategy::FaithfulReduction, depth, g, a);
      auto b2 = minimal_normal_subgroups_in(g, kernel).front();
      ensure(intersection(a, b2).is_trivial(), "lift: A n B = 1 in the faithful reduction");
      PermGroup g0;
      if (a.order() * b2.order() * c_order == g.order()) {
        g0 = PermGroup::generate(g.degree(), [&] {
          auto gens = b2.generators();
          gens.push_back(c);
          return gens;
        }());
      } else {
        auto qb = quotient_by_normal(g, b2);
        auto ab = join(a, b2);
        auto hbar = descend(g, a, qb.group, qb.map.image_of(ab), qb.map(c), depth);
        g0 = qb.map.preimage(hbar);
      }
      ensure(g0.contains(c) && is_subgroup(b2, g0), "lift: G0 contains C and B");
      ensure(product_order(g0, a) == g.order(), "lift: G0 A = G");
      auto a0 = intersection(a, g0);
      ensure(a0.order() < a.order(), "lift: |A n G0| < |A|");
      return descend(g, a, g0, a0, c, depth);
    }

    // A = Q_1 x ... x Q_t with G permuting the simple factors.
    auto factors = minimal_normal_subgroups_in(a, a);
    auto const cbar = cyclic_subgroup(q.map(c));
    auto const kbar = s.kernel();
    std::optional<PermGroup> q1, g1;
    std::size_t c1_order = 0, k1_order = 0;
    for (auto const &qi : factors) {
      auto n = normalizer(g, qi);
      auto f1 = q.map.image_of(n);
      auto c1 = intersection(f1, cbar).order();
      auto k1 = intersection(f1, kbar).order();
      if (c1 * k1 == f1.order()) {
        q1 = qi;
        g1 = n;
        c1_order = c1;
        k1_order = k1;
        break;
      }
    }
    ensure(q1.has_value(), "lift: no simple factor with stabilizer of the form C1 K1");
    Perm const c1 = c.pow(static_cast<long long>(c_order / c1_order));

    bool c1_centralizes = true;
    for (auto const &x : q1->generators())
      if (x * c1 != c1 * x)
        c1_centralizes = false;

    if (c1_centralizes) {
      note(Strategy::CaseI, depth, g, a);
      auto u1 = sylow_subgroup(*q1, factorize(q1->order()).begin()->first);
      auto reps = c_compatible_representatives(g, *g1, c, u1);
      auto u = product_intravariant_subgroup(g, a, *q1, u1, reps).u;
      return descend_to_normalizer(g, a, c, u, depth);
    }

    if (k1_order != 1) {
      note(Strategy::CaseIIOracle, depth, g, a);
      if (!opts_.allow_oracle)
        throw OracleRequired("lift: almost simple case with C1, K1 != 1 needs the element-search oracle");
      return oracle(g, a, c, q, s);
    }

    note(Strategy::CaseIII, depth, g, a);
    std::vector<Perm> gens;
    Perm cj = g.identity();
    for (std::size_t j = 0; j < c_order; ++j, cj *= c)
      for (auto const &x : q1->generators())
        gens.push_back(x.conjugate(cj));
    auto qt = PermGroup::generate(g.degree(), gens);
    auto gt = normalizer(g, qt);
    ensure(gt.order() == c_order * a.order() && gt.contains(c), "lift: N_G(Q~1) = CA");
    auto u1 = centralizer(qt, c);
    ensure(!u1.is_trivial() && u1.order() != qt.order(), "lift: 1 < C_Q~1(C) < Q~1");
    auto reps = c_compatible_representatives(g, gt, c, u1);
    auto u = product_intravariant_subgroup(g, a, qt, u1, reps).u;
    return descend_to_normalizer(g, a, c, u, depth);
  }

  PermGroup oracle(PermGroup const &g, PermGroup const &a, Perm const &c, Quotient const &q,
                   FrobeniusStructure const &s)
  {
    if (g.order() > caps().oracle)
      throw CapExceeded("oracle: |G| = " + std::to_string(g.order()) + " exceeds the oracle cap");
    auto k = oracle_search(g, q, s, c);
    if (!k)
      throw NotFound("oracle: no C-Frobenius lift found");
    witness_ = *k;
    auto h = c_times(c, {*k}, g.degree());
    ensure(product_order(h, a) == g.order(), "oracle: C<k>A = G");
    return h;
  }

private:
  void note(Strategy s, unsigned depth, PermGroup const &g, PermGroup const &a)
  {
    trace_.push_back({s, depth, g.order(), a.order()});
  }

  PermGroup descend(PermGroup const &g, PermGroup const &a, PermGroup const &g2, PermGroup const &a2,
                    Perm const &c2, unsigned depth)
  {
    bool smaller = g2.order() < g.order() || (g2.order() == g.order() && a2.order() < a.order());
    ensure(smaller, "lift: recursion does not decrease (|G|, |A|)");
    return lift(g2, a2, c2, depth + 1);
  }

  PermGroup descend_to_normalizer(PermGroup const &g, PermGroup const &a, Perm const &c, PermGroup const &u,
                                  unsigned depth)
  {
    ensure(normalizes(c, u), "lift: C normalizes U");
    bool a_normalizes = true;
    for (auto const &x : a.generators())
      a_normalizes = a_normalizes && normalizes(x, u);
    ensure(!a_normalizes, "lift: A does not normalize U");
    auto n = normalizer(g, u);
    ensure(n.order() < g.order(), "lift: N_G(U) is proper");
    ensure(product_order(n, a) == g.order(), "lift: G = N_G(U) A");
    return descend(g, a, n, intersection(n, a), c, depth);
  }

  PermGroup elementary_abelian(PermGroup const &g, PermGroup const &a, Perm const &c, unsigned depth)
  {
    auto const p = factorize(a.order()).begin()->first;
    auto q = quotient_by_normal(g, a);
    auto s = require_frobenius(CGroup(q.group, q.map(c)), "lift_elementary_abelian: G/A");
    auto m = q.map.preimage(s.kernel());
    auto const c_order = c.order();

    bool trivial_action = true;
    for (auto const &x : m.generators())
      for (auto const &y : a.generators())
        if (x * y != y * x)
          trivial_action = false;

    PermGroup h;
    if (!trivial_action) {
      note(Strategy::AbelianNontrivialAction, depth, g, a);
      std::optional<PermGroup> mr;
      u64 r = 0;
      for (auto const &[prime, e] : factorize(s.kernel_order)) {
        (void)e;
        auto cand = sylow_subgroup(m, prime);
        bool centralizes = true;
        for (auto const &x : cand.generators())
          for (auto const &y : a.generators())
            if (x * y != y * x)
              centralizes = false;
        if (!centralizes) {
          mr = cand;
          r = prime;
          break;
        }
      }
      ensure(mr.has_value() && r != p, "lift_elementary_abelian: a Sylow r-subgroup of M acts nontrivially, r != p");
      ensure(centralizer(a, *mr).is_trivial(), "lift_elementary_abelian: C_A(M_r) = 1");
      auto n = normalizer(g, *mr);
      ensure(intersection(n, a).is_trivial(), "lift_elementary_abelian: N_A(M_r) = 1");
      ensure(product_order(n, a) == g.order(), "lift_elementary_abelian: G = A N_G(M_r)");
      ensure(is_free_c_module(a, p, c, c_order), "lift_elementary_abelian: A is a free C-module");
      // Complements containing C are N^(x^-1) with c^x in N; take the least.
      std::optional<PermGroup> best;
      for (auto const &x : a.elements())
        if (n.contains(c.conjugate(x))) {
          auto cand = conjugate(n, x.inverse());
          if (!best || cand.less_than(*best))
            best = cand;
        }
      ensure(best.has_value(), "lift_elementary_abelian: C is conjugate into N_G(M_r) by A");
      h = *best;
    } else {
      note(Strategy::AbelianTrivialAction, depth, g, a);
      ensure(is_abelian(m), "lift_elementary_abelian: M is abelian");
      std::vector<Perm> ls;
      for (auto const &[r, e] : factorize(s.kernel_order)) {
        (void)e;
        auto mr = sylow_subgroup(m, r);
        if (is_cyclic(mr)) {
          ls.push_back(*cyclic_generator(mr));
          continue;
        }
        ensure(r == p, "lift_elementary_abelian: noncyclic M_r only for r = p");
        ls.push_back(frattini_complement(mr, a, c, p));
      }
      h = c_times(c, ls, g.degree());
    }
    ensure(h.contains(c), "lift_elementary_abelian: C <= H");
    ensure(product_order(h, a) == g.order(), "lift_elementary_abelian: HA = G");
    return h;
  }

  // In the rank-two case: a cyclic L_p <= M_p normalized by C whose image
  // in the Frattini quotient V = M_p / M_p^p is a C-invariant complement to
  // the image of A.
  static Perm frattini_complement(PermGroup const &mp, PermGroup const &a, Perm const &c, u64 p)
  {
    std::vector<Perm> powers;
    for (auto const &x : mp.generators())
      powers.push_back(x.pow(static_cast<long long>(p)));
    auto phi = PermGroup::generate(mp.degree(), powers);
    auto aphi = join(a, phi);
    for (auto const &x : mp.elements()) {
      if (aphi.contains(x))
        continue;
      auto line = phi.extended(x);
      if (!line.contains(x.conjugate(c)))
        continue;
      auto l = cyclic_subgroup(x);
      if (!normalizes(c, l) || product_order(l, a) != mp.order())
        continue;
      return x;
    }
    ensure(false, "lift_elementary_abelian: no C-invariant complement in the Frattini quotient");
    return Perm();
  }

  LiftOptions opts_;
  std::vector<TraceStep> &trace_;
  std::optional<Perm> &witness_;
};

inline LiftResult finish(CGroup const &g, PermGroup h, std::vector<TraceStep> trace, std::optional<Perm> witness)
{
  auto s = require_frobenius(CGroup(h, g.c()), "lift result");
  return LiftResult{std::move(h), std::move(s), std::move(trace), std::move(witness)};
}

} // namespace detail

inline LiftResult lift_frobenius(LiftInstance const &inst, LiftOptions opts = {})
{
  std::vector<TraceStep> trace;
  std::optional<Perm> witness;
  detail::Lifter lifter(opts, trace, witness);
  auto h = lifter.lift(inst.g.group(), inst.a, inst.g.c(), 0);
  ensure(validate_lift(inst.g.group(), inst.a, inst.g.c(), h), "lift_frobenius: result fails re-validation");
  return detail::finish(inst.g, std::move(h), std::move(trace), std::move(witness));
}

/// The elementary abelian case on its own; A must be minimal normal.
inline LiftResult lift_elementary_abelian(LiftInstance const &inst)
{
  auto const &a = inst.a;
  if (a.is_trivial() || !is_abelian(a) || factorize(a.order()).size() != 1)
    throw HypothesisViolated("lift_elementary_abelian: A is not a nontrivial abelian p-group");
  auto p = factorize(a.order()).begin()->first;
  for (auto const &x : a.generators())
    if (x.order() != p)
      throw HypothesisViolated("lift_elementary_abelian: A is not elementary abelian");
  if (minimal_normal_subgroups_in(inst.g.group(), a).front().order() != a.order())
    throw HypothesisViolated("lift_elementary_abelian: A is not minimal normal");
  return lift_frobenius(inst);
}

inline LiftResult oracle_lift(LiftInstance const &inst)
{
  std::vector<TraceStep> trace{{Strategy::Oracle, 0, inst.g.group().order(), inst.a.order()}};
  std::optional<Perm> witness;
  detail::Lifter lifter({}, trace, witness);
  auto h = lifter.oracle(inst.g.group(), inst.a, inst.g.c(), inst.quotient, inst.structure);
  return detail::finish(inst.g, std::move(h), std::move(trace), std::move(witness));
}

/// Fiber product of two C-epimorphisms and a C-Frobenius subgroup of it
/// mapping onto F1.
struct FiberProduct
{
  CGroup fiber;
  PermGroup h;
  FrobeniusStructure structure;
  GroupHom projection; // h -> F1
  std::vector<Perm> kernel_parts; // k_p = (k1, k2) per prime
};

inline void require_c_epimorphism(GroupHom const &rho, CGroup const &from, CGroup const &to, char const *what)
{
  if (!(rho.source() == from.group()) || !(rho.target() == to.group()))
    throw NotCEpimorphism(std::string(what) + ": source or target mismatch");
  if (!rho.is_surjective())
    throw NotCEpimorphism(std::string(what) + ": not surjective");
  if (rho(from.c()) != to.c() || from.c_order() != to.c_order())
    throw NotCEpimorphism(std::string(what) + ": does not map c to c");
}

inline FiberProduct fiber_product_frobenius(CGroup const &f1, CGroup const &f2, CGroup const &f3,
                                            GroupHom const &rho1, GroupHom const &rho2)
{
  require_c_epimorphism(rho1, f1, f3, "fiber_product_frobenius: rho1");
  require_c_epimorphism(rho2, f2, f3, "fiber_product_frobenius: rho2");
  auto s1 = require_frobenius(f1, "fiber_product_frobenius: F1");
  auto s2 = require_frobenius(f2, "fiber_product_frobenius: F2");
  require_frobenius(f3, "fiber_product_frobenius: F3");

  auto const &g1 = f1.group();
  auto const &g2 = f2.group();
  auto const n = g1.degree() + g2.degree();

  auto lift_into_f2 = [&](Perm const &target, PermGroup const &within) -> std::optional<Perm> {
    for (auto const &y : within.elements())
      if (rho2(y) == target)
        return y;
    return std::nullopt;
  };

  std::vector<Perm> gens;
  for (auto const &x : g1.generators())
    gens.push_back(pair_perm(x, *lift_into_f2(rho1(x), g2)));
  auto const ker2 = rho2.kernel();
  for (auto const &z : ker2.generators())
    gens.push_back(pair_perm(g1.identity(), z));
  auto fiber = PermGroup::generate(n, gens);
  ensure(fiber.order() == g1.order() * g2.order() / f3.group().order(), "fiber_product_frobenius: |F| = |F1||F2|/|F3|");
  Perm c = pair_perm(f1.c(), f2.c());

  std::vector<Perm> parts;
  for (auto const &[p, act] : s1.primes) {
    (void)act;
    auto k1 = s1.kernel_generator.pow(static_cast<long long>(s1.kernel_order / p_part(s1.kernel_order, p)));
    auto k3 = rho1(k1);
    Perm k2 = g2.identity();
    if (!k3.is_identity()) {
      auto q2 = p_part(s2.kernel_order, p);
      auto k2p = cyclic_subgroup(s2.kernel_generator.pow(static_cast<long long>(s2.kernel_order / q2)));
      auto found = lift_into_f2(k3, k2p);
      ensure(found.has_value(), "fiber_product_frobenius: rho2(K2^(p)) = K3^(p)");
      k2 = *found;
      ensure(k2.order() == q2, "fiber_product_frobenius: k2 generates K2^(p)");
    }
    Perm k = pair_perm(k1, k2);
    ensure(fiber.contains(k), "fiber_product_frobenius: (k1, k2) lies in the fiber product");
    ensure(conjugation_exponent(k, c).has_value(), "fiber_product_frobenius: C normalizes <k>");
    parts.push_back(k);
  }

  auto h = detail::c_times(c, parts, n);
  auto s = require_frobenius(CGroup(h, c), "fiber_product_frobenius: result");
  std::vector<Perm> proj;
  for (auto const &x : h.generators()) {
    std::vector<point> img(x.images().begin(), x.images().begin() + static_cast<long>(g1.degree()));
    proj.emplace_back(std::move(img));
  }
  auto projection = GroupHom::from_generator_images(h, g1, proj);
  ensure(projection.is_surjective(), "fiber_product_frobenius: H maps onto F1");
  ensure(projection(c) == f1.c(), "fiber_product_frobenius: projection is a C-map");
  return FiberProduct{CGroup(fiber, c), std::move(h), std::move(s), std::move(projection), std::move(parts)};
}

} // namespace forge
