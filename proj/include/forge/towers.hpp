#pragma once

#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "frobenius.hpp"
#include "groups.hpp"
#include "hom.hpp"
#include "lifting.hpp"
#include "numtheory.hpp"

namespace forge
{

/// T_0 <- T_1 <- ... <- T_n; maps[i] : T_{i+1} -> T_i.
struct QuotientTower
{
  std::vector<CGroup> levels;
  std::vector<GroupHom> maps;

  static QuotientTower make(std::vector<CGroup> levels, std::vector<GroupHom> maps)
  {
    if (levels.empty())
      throw InvalidArgument("tower: no levels");
    if (maps.size() + 1 != levels.size())
      throw InvalidArgument("tower: need one map per consecutive pair of levels");
    for (std::size_t i = 0; i < maps.size(); ++i)
      require_c_epimorphism(maps[i], levels[i + 1], levels[i], ("tower map " + std::to_string(i)).c_str());
    return QuotientTower{std::move(levels), std::move(maps)};
  }
};

struct PruneResult
{
  PermGroup group;          // C K'
  bool empty_kernel = false; // K' = 1, group is just C
  std::set<u64> removed;     // primes dropped from the kernel
};

inline std::set<u64> kernel_primes(FrobeniusStructure const &s)
{
  std::set<u64> out;
  for (auto const &[p, a] : s.primes) {
    (void)a;
    out.insert(p);
  }
  return out;
}

/// Keeps the part of the Frobenius kernel whose order only involves allowed primes.
inline PruneResult prune_kernel_primes(CGroup const &h, std::set<u64> const &allowed)
{
  auto s = require_frobenius(h, "prune_kernel_primes");
  u64 keep = 1;
  PruneResult out;
  for (auto const &[p, a] : s.primes) {
    if (allowed.count(p))
      keep *= a.p_part_order;
    else
      out.removed.insert(p);
  }
  auto k = s.kernel_generator.pow(static_cast<long long>(s.kernel_order / keep));
  out.group = PermGroup::generate(h.group().degree(), {h.c(), k});
  out.empty_kernel = keep == 1;
  return out;
}

struct TowerLevel
{
  PermGroup f;              // F_i <= T_i
  FrobeniusStructure structure;
  std::vector<TraceStep> trace; // lifting trace from the level below
  std::set<u64> pruned;
};

/// Lifts F_0 level by level: F_{i+1} is a C-Frobenius subgroup of T_{i+1}
/// mapping onto F_i, with the kernel primes of F_0.
inline std::vector<TowerLevel> lift_along_tower(QuotientTower const &tower, PermGroup const &f0,
                                                LiftOptions opts = {})
{
  auto const &t0 = tower.levels.front();
  require_subgroup(f0, t0.group(), "lift_along_tower");
  auto s0 = require_frobenius(CGroup(f0, t0.c()), "lift_along_tower: F_0");
  auto const allowed = kernel_primes(s0);

  std::vector<TowerLevel> out{{f0, s0, {}, {}}};
  for (std::size_t i = 0; i < tower.maps.size(); ++i) {
    auto const &pi = tower.maps[i];
    auto const &next = tower.levels[i + 1];
    auto const &fi = out.back().f;
    auto g = pi.preimage(fi);
    auto a = pi.kernel();
    auto lifted = lift_frobenius(LiftInstance::make(CGroup(g, next.c()), a), opts);
    auto pruned = prune_kernel_primes(CGroup(lifted.h, next.c()), allowed);
    ensure(!pruned.empty_kernel, "lift_along_tower: pruning emptied the kernel");
    auto s = require_frobenius(CGroup(pruned.group, next.c()), "lift_along_tower: F_i");
    ensure(kernel_primes(s) == allowed, "lift_along_tower: kernel primes changed");

    // pi restricted to F_{i+1} is a C-epimorphism onto F_i with kernel F_{i+1} n ker pi.
    auto restricted = pi.restrict_to(pruned.group);
    ensure(restricted.image() == fi, "lift_along_tower: pi(F_{i+1}) = F_i");
    ensure(restricted.kernel() == intersection(pruned.group, a), "lift_along_tower: kernel of the restriction");
    out.push_back({pruned.group, s, std::move(lifted.trace), pruned.removed});
  }
  return out;
}

/// Z/c x| Z/p^(n+1) for n = 0..levels-1 with the Teichmueller lifts of the
/// exponent m0 and the reduction maps.
inline QuotientTower frobenius_tower(std::size_t c_order, u64 p, std::size_t levels, u64 m0)
{
  std::vector<CGroup> ts;
  std::vector<SemidirectData> data;
  u64 q = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    q *= p;
    auto m = teichmuller_lift(m0, p, static_cast<unsigned>(i + 1));
    data.push_back(affine_group(c_order, q, m));
    ts.emplace_back(data.back().group, data.back().c);
  }
  std::vector<GroupHom> maps;
  for (std::size_t i = 0; i + 1 < levels; ++i)
    maps.push_back(GroupHom::from_generator_images(data[i + 1].group, data[i].group,
                                                   {data[i].c, data[i].translations[0]}));
  return QuotientTower::make(std::move(ts), std::move(maps));
}

struct FreeProductEpimorphism
{
  GroupHom hom_b; // b -> beta(b)^k
  GroupHom hom_c; // identity on C
  Perm commutator; // k^-1 k^c
  bool surjective = false;
};

/// B -> F, b -> beta(b)^k, together with C -> F the identity.
inline FreeProductEpimorphism free_product_epimorphism(GroupHom const &beta, CGroup const &f)
{
  auto s = require_frobenius(f, "free_product_epimorphism");
  auto const csub = f.c_subgroup();
  if (!(beta.target() == csub))
    throw InvalidArgument("free_product_epimorphism: beta must map into C");
  if (!beta.is_surjective())
    throw NotSurjective("free_product_epimorphism: beta is not onto C");

  auto const &k = s.kernel_generator;
  std::vector<Perm> images;
  for (auto const &b : beta.source().generators())
    images.push_back(beta(b).conjugate(k));
  auto hom_b = GroupHom::from_generator_images(beta.source(), f.group(), images);
  auto hom_c = GroupHom::from_generator_images(csub, f.group(), csub.generators());

  Perm comm = k.inverse() * k.conjugate(f.c());
  bool generates = comm.order() == s.kernel_order;
  if (!generates)
    throw DegenerateKernel("free_product_epimorphism: k^-1 k^c does not generate K");

  auto both = join(hom_b.image(), hom_c.image());
  bool onto = both.order() == f.group().order();
  ensure(onto == generates, "free_product_epimorphism: generation test disagrees with k^-1 k^c");
  return FreeProductEpimorphism{std::move(hom_b), std::move(hom_c), std::move(comm), onto};
}

/// A finite group receiving injective maps from two factors whose images generate it.
struct FreeProductShadow
{
  PermGroup g1, g2, target;
  GroupHom phi1, phi2;
};

struct PopReport
{
  std::size_t level = 0;
  u64 exponent = 0;
  CGroup f;
  FrobeniusStructure structure;
  FreeProductShadow shadow;
  PermGroup h;
  std::size_t h_meet_g1 = 0;
  std::size_t h_meet_g2 = 0;
  bool meets_not_prime_power = false;
  std::size_t conjugates_scanned = 0;
  bool h_in_conjugate_of_factor = true;
  std::map<u64, unsigned> order_factorization;
};

/// F_n = Z/6 x| Z/7^n inside a finite quotient of Z/6 * Z/6, and Pop's two
/// conditions checked there.
inline PopReport pop_certificate(std::size_t n)
{
  if (n == 0)
    throw InvalidArgument("pop_certificate: level must be at least 1");
  u64 q = 1;
  for (std::size_t i = 0; i < n; ++i) {
    q *= 7;
    if (q * 6 > caps().closure)
      throw CapExceeded("pop_certificate: 6 * 7^n exceeds the closure cap");
  }
  auto m = least_frobenius_exponent(6, q);
  ensure(m != 0, "pop_certificate: no exponent of order 6");
  auto d = affine_group(6, q, m);
  CGroup f(d.group, d.c);
  auto s = require_frobenius(f, "pop_certificate");

  auto z6 = cyclic_group(6);
  auto csub = f.c_subgroup();
  auto beta = GroupHom::from_generator_images(z6, csub, {d.c});
  auto epi = free_product_epimorphism(beta, f);
  ensure(epi.surjective, "pop_certificate: factor images generate F_n");
  auto phi1 = GroupHom::from_generator_images(z6, d.group, epi.hom_b.images());
  auto phi2 = GroupHom::from_generator_images(z6, d.group, {d.c});
  ensure(phi1.is_injective() && phi2.is_injective(), "pop_certificate: factor maps are injective");

  PopReport r{n, m, f, s, FreeProductShadow{z6, z6, d.group, phi1, phi2}, d.group, 0, 0, false, 0, true, {}};
  auto im1 = phi1.image(), im2 = phi2.image();
  r.h_meet_g1 = intersection(r.h, im1).order();
  r.h_meet_g2 = intersection(r.h, im2).order();
  r.meets_not_prime_power = !is_prime_power(r.h_meet_g2) && !is_prime_power(r.h_meet_g1);

  bool inside = false;
  for (auto const &g : d.group.elements()) {
    for (auto const *im : {&im1, &im2}) {
      auto conj = conjugate(*im, g);
      bool all = true;
      for (auto const &x : r.h.generators())
        if (!conj.contains(x)) {
          all = false;
          break;
        }
      inside = inside || all;
      ++r.conjugates_scanned;
    }
  }
  r.h_in_conjugate_of_factor = inside;
  r.order_factorization = factorize(r.h.order());
  return r;
}

} // namespace forge
