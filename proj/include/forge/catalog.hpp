#pragma once

#include <functional>
#include <string>
#include <vector>

#include "caps.hpp"
#include "frobenius.hpp"
#include "groups.hpp"
#include "lifting.hpp"
#include "linfield/projective.hpp"

namespace forge
{

struct CatalogInstance
{
  CGroup g;
  PermGroup a;
};

struct CatalogEntry
{
  std::string name;
  std::string summary;
  Caps caps;           // smallest caps the entry runs under
  LiftOptions options; // options for the structural lift
  std::function<CatalogInstance()> build;
};

namespace detail
{

inline CatalogInstance frobenius_over(SemidirectData const &d, std::vector<Perm> const &normal)
{
  return {CGroup(d.group, d.c), PermGroup::generate(d.group.degree(), normal)};
}

// (Z/6 x| Z/7) x N with A = N.
inline CatalogInstance z6z7_times(PermGroup const &n)
{
  auto d = affine_group(6, 7, 3);
  auto g = direct_product(d.group, n);
  std::vector<Perm> ng;
  for (auto const &x : n.generators())
    ng.push_back(embed_perm(x, 7, 7 + n.degree()));
  return {CGroup(g, embed_perm(d.c, 0, g.degree())), PermGroup::generate(g.degree(), ng)};
}

// (Z/2 x| Z/3) x A5 with A = A5.
inline CatalogInstance s3_times_a5()
{
  auto d = affine_group(2, 3, 2);
  auto a5 = alternating_group(5);
  auto g = direct_product(d.group, a5);
  std::vector<Perm> ag;
  for (auto const &x : a5.generators())
    ag.push_back(embed_perm(x, 3, 8));
  return {CGroup(g, embed_perm(d.c, 0, 8)), PermGroup::generate(8, ag)};
}

// base wr S3 with A the base group and c the swap of blocks 2 and 3.
inline CatalogInstance wreath_over_s3(PermGroup const &base)
{
  auto m = base.degree();
  auto g = wreath_product(base, symmetric_group(3));
  std::vector<Perm> bg;
  for (std::size_t b = 0; b < 3; ++b)
    for (auto const &x : base.generators())
      bg.push_back(embed_perm(x, b * m, 3 * m));
  return {CGroup(g, block_perm(Perm::from_cycles("(2 3)", 3), m)), PermGroup::generate(3 * m, bg)};
}

// A5^3 extended by the 3-cycle on blocks and c = (1 2) in every block
// followed by the swap of blocks 2 and 3. c^2 does not centralize A5^3.
inline CatalogInstance twisted_a5_cube()
{
  auto a5 = alternating_group(5);
  std::vector<Perm> base;
  for (std::size_t b = 0; b < 3; ++b)
    for (auto const &x : a5.generators())
      base.push_back(embed_perm(x, b * 5, 15));
  auto t = Perm::from_cycles("(1 2)", 5);
  Perm c = blockwise_perm({t, t, t}) * block_perm(Perm::from_cycles("(2 3)", 3), 5);
  auto gens = base;
  gens.push_back(block_perm(Perm::from_cycles("(1 2 3)", 3), 5));
  gens.push_back(c);
  return {CGroup(PermGroup::generate(15, gens), c), PermGroup::generate(15, base)};
}

inline CatalogInstance pgaml_3_4()
{
  auto pgl = projective_group(3, 4, LinearKind::PGL);
  auto psl = projective_group(3, 4, LinearKind::PSL);
  return {CGroup(pgl.group.extended(pgl.sigma), pgl.sigma), psl.group};
}

} // namespace detail

/// The built-in lifting instances, in a fixed order.
inline std::vector<CatalogEntry> const &catalog()
{
  using namespace detail;
  static std::vector<CatalogEntry> const entries = [] {
    Caps const small{};
    Caps const wreath{2'000'000, 2000, 2'000'000};
    Caps const pgaml{1'000'000, 2000, 200'000};
    LiftOptions const structural{.prime_power_fast_path = false, .allow_oracle = false};
    LiftOptions const with_oracle{.prime_power_fast_path = false, .allow_oracle = true};
    auto P = [](char const *s, std::size_t n) { return Perm::from_cycles(s, n); };

    std::vector<CatalogEntry> e;
    e.push_back({"s4-v4", "S4 over the Klein four group, c = (1 2)", small, {}, [P] {
                   auto g = symmetric_group(4);
                   return CatalogInstance{CGroup(g, P("(1 2)", 4)),
                                          PermGroup::generate(4, {P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)})};
                 }});
    e.push_back({"z2-z3sq", "Z/2 x| (Z/3)^2 over the first summand", small, {}, [] {
                   auto d = semidirect_blocks(2, {{3, 2}, {3, 2}});
                   return frobenius_over(d, {d.translations[0]});
                 }});
    e.push_back({"z2-z3sq-diagonal", "Z/2 x| (Z/3)^2 over the diagonal", small, {}, [] {
                   auto d = semidirect_blocks(2, {{3, 2}, {3, 2}});
                   return frobenius_over(d, {d.translations[0] * d.translations[1]});
                 }});
    e.push_back({"z2-z9", "Z/2 x| Z/9 over the subgroup of order 3", small, {}, [] {
                   auto d = affine_group(2, 9, 8);
                   return frobenius_over(d, {d.translations[0].pow(3)});
                 }});
    e.push_back({"z2-z25", "Z/2 x| Z/25 over Z/5", small, {}, [] {
                   auto d = affine_group(2, 25, 24);
                   return frobenius_over(d, {d.translations[0].pow(5)});
                 }});
    e.push_back({"z4-z25", "Z/4 x| Z/25 over Z/5", small, {}, [] {
                   auto d = affine_group(4, 25, 7);
                   return frobenius_over(d, {d.translations[0].pow(5)});
                 }});
    e.push_back({"z3-z49", "Z/3 x| Z/49 over Z/7", small, {}, [] {
                   auto d = affine_group(3, 49, 18);
                   return frobenius_over(d, {d.translations[0].pow(7)});
                 }});
    e.push_back({"z6-z49", "Z/6 x| Z/49, the preimage of Z/6 x| Z/7", small, {}, [] {
                   auto d = affine_group(6, 49, 31);
                   return frobenius_over(d, {d.translations[0].pow(7)});
                 }});
    e.push_back({"z6-z343-over-z7", "Z/6 x| Z/343 over Z/7", small, {}, [] {
                   auto d = affine_group(6, 343, teichmuller_lift(3, 7, 3));
                   return frobenius_over(d, {d.translations[0].pow(49)});
                 }});
    e.push_back({"z6-z343-over-z49", "Z/6 x| Z/343 over Z/49", small, {}, [] {
                   auto d = affine_group(6, 343, teichmuller_lift(3, 7, 3));
                   return frobenius_over(d, {d.translations[0].pow(7)});
                 }});
    e.push_back({"z2-z3z5-over-z3", "Z/2 x| (Z/3 x Z/5) over Z/3", small, {}, [] {
                   auto d = semidirect_blocks(2, {{3, 2}, {5, 4}});
                   return frobenius_over(d, {d.translations[0]});
                 }});
    e.push_back({"z2-z3z5-over-z5", "Z/2 x| (Z/3 x Z/5) over Z/5", small, {}, [] {
                   auto d = semidirect_blocks(2, {{3, 2}, {5, 4}});
                   return frobenius_over(d, {d.translations[1]});
                 }});
    e.push_back({"z4-z5sq", "Z/4 x| (Z/5)^2 over the first summand", small, {}, [] {
                   auto d = semidirect_blocks(4, {{5, 2}, {5, 2}});
                   return frobenius_over(d, {d.translations[0]});
                 }});
    e.push_back({"z6-z7z13", "Z/6 x| (Z/7 x Z/13) over Z/13", small, {}, [] {
                   auto d = semidirect_blocks(6, {{7, 3}, {13, 4}});
                   return frobenius_over(d, {d.translations[1]});
                 }});
    e.push_back({"z6-z7-x-z2", "(Z/6 x| Z/7) x Z/2", small, {}, [] { return z6z7_times(cyclic_group(2)); }});
    e.push_back({"z6-z7-x-z3", "(Z/6 x| Z/7) x Z/3", small, {}, [] { return z6z7_times(cyclic_group(3)); }});
    e.push_back({"z6-z7-x-z4", "(Z/6 x| Z/7) x Z/4", small, {}, [] { return z6z7_times(cyclic_group(4)); }});
    e.push_back({"z6-z7-x-z5", "(Z/6 x| Z/7) x Z/5", small, {}, [] { return z6z7_times(cyclic_group(5)); }});
    e.push_back({"z6-z7-x-v4", "(Z/6 x| Z/7) x V4", small, {}, [P] {
                   return z6z7_times(PermGroup::generate(4, {P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)}));
                 }});
    e.push_back({"z6-z7-x-s3", "(Z/6 x| Z/7) x S3", small, {}, [] { return z6z7_times(symmetric_group(3)); }});
    e.push_back({"z6-z7-x-a4", "(Z/6 x| Z/7) x A4", small, {}, [] { return z6z7_times(alternating_group(4)); }});
    e.push_back({"z6-z7-x-a5", "(Z/6 x| Z/7) x A5", small, {}, [] { return z6z7_times(alternating_group(5)); }});
    e.push_back({"s4-x-z3", "S4 x Z/3 over V4 x Z/3", small, {}, [P] {
                   auto g = direct_product(symmetric_group(4), cyclic_group(3));
                   return CatalogInstance{
                       CGroup(g, P("(1 2)", 7)),
                       PermGroup::generate(7, {P("(1 2)(3 4)", 7), P("(1 3)(2 4)", 7), P("(5 6 7)", 7)})};
                 }});
    e.push_back({"s3-x-a5", "S3 x A5 over A5, prime power fast path", small, {}, [] { return s3_times_a5(); }});
    e.push_back({"s3-x-a5-structural", "S3 x A5 over A5 through the faithful reduction", small, structural,
                 [] { return s3_times_a5(); }});
    e.push_back({"z2-wr-s3", "Z/2 wr S3 over the base group", small, {}, [] { return wreath_over_s3(cyclic_group(2)); }});
    e.push_back({"s3-wr-s3", "S3 wr S3 over the base group", small, structural,
                 [] { return wreath_over_s3(symmetric_group(3)); }});
    e.push_back({"a4-wr-s3", "A4 wr S3 over the base group", small, structural,
                 [] { return wreath_over_s3(alternating_group(4)); }});
    e.push_back({"a5-wr-s3", "A5 wr S3 over A5^3, prime power fast path", wreath, {},
                 [] { return wreath_over_s3(alternating_group(5)); }});
    e.push_back({"a5-wr-s3-case-i", "A5 wr S3 over A5^3, c centralizes a factor", wreath, structural,
                 [] { return wreath_over_s3(alternating_group(5)); }});
    e.push_back({"a5-cube-case-iii", "A5^3 twisted by c, no power of c centralizes a factor", wreath, structural,
                 [] { return twisted_a5_cube(); }});
    e.push_back({"pgaml-3-4", "PGL(3,4) extended by the Frobenius map over PSL(3,4)", pgaml, {},
                 [] { return pgaml_3_4(); }});
    e.push_back({"pgaml-3-4-case-ii", "PGL(3,4) extended by the Frobenius map, kernel acting nontrivially",
                 pgaml, with_oracle, [] { return pgaml_3_4(); }});
    return e;
  }();
  return entries;
}

inline CatalogEntry const *find_catalog_entry(std::string const &name)
{
  for (auto const &e : catalog())
    if (e.name == name)
      return &e;
  return nullptr;
}

} // namespace forge
