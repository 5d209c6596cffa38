#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "hom.hpp"
#include "numtheory.hpp"
#include "perm_group.hpp"
#include "quotient.hpp"

namespace forge
{

/// A group with a distinguished cyclic subgroup C = <c>.
class CGroup
{
public:
  CGroup(PermGroup group, Perm c) : group_(std::move(group)), c_(std::move(c))
  {
    if (!group_.contains(c_))
      throw ValidationError("C-group: c = " + c_.to_cycles() + " is not in the group");
    if (c_.is_identity())
      throw ValidationError("C-group: c must be nontrivial");
  }

  PermGroup const &group() const { return group_; }
  Perm const &c() const { return c_; }
  std::size_t c_order() const { return c_.order(); }
  PermGroup c_subgroup() const { return cyclic_subgroup(c_); }

private:
  PermGroup group_;
  Perm c_;
};

struct PrimeAction
{
  u64 p_part_order = 1;
  u64 action_exponent = 1; // c^-1 k c = k^m on the p-part, reduced mod p_part_order
};

/// Witness that F = C x| K is C-Frobenius with K = <kernel_generator>.
struct FrobeniusStructure
{
  std::size_t c_order = 0;
  Perm c;
  Perm kernel_generator;
  std::size_t kernel_order = 0;
  u64 action_exponent = 1; // c^-1 k c = k^m on all of K
  std::map<u64, PrimeAction> primes;

  PermGroup kernel() const { return cyclic_subgroup(kernel_generator); }
};

struct FrobeniusRefusal
{
  std::string reason;
};

using FrobeniusResult = std::variant<FrobeniusStructure, FrobeniusRefusal>;

namespace refusal
{
inline constexpr char const *no_complement = "no cyclic normal complement";
inline constexpr char const *c_not_dividing = "|C| does not divide p-1";
inline constexpr char const *unfaithful = "unfaithful action on p-part";
inline constexpr char const *trivial_kernel = "trivial kernel";
} // namespace refusal

/// Exponent m with x^-1 k x = k^m, or nullopt when x does not normalize <k>.
inline std::optional<u64> conjugation_exponent(Perm const &k, Perm const &x)
{
  Perm target = k.conjugate(x);
  Perm y = k;
  auto n = k.order();
  for (u64 m = 1; m <= n; ++m, y *= k)
    if (y == target)
      return m % n;
  return std::nullopt;
}

/// Recognises C-Frobenius groups. The kernel is the cyclic normal
/// complement of C of order |F|/|C| with the lexicographically least
/// generator; the action is then checked prime by prime.
inline FrobeniusResult is_c_frobenius(CGroup const &f)
{
  auto const &g = f.group();
  auto const c_order = f.c_order();
  auto const n = g.order() / c_order;
  if (n == 1)
    return FrobeniusRefusal{refusal::trivial_kernel};
  auto const csub = f.c_subgroup();

  std::optional<Perm> k;
  for (auto const &x : g.elements()) {
    if (x.order() != n)
      continue;
    auto kx = cyclic_subgroup(x);
    if (!is_normal(kx, g))
      continue;
    if (intersection(kx, csub).order() != 1)
      continue;
    k = x;
    break;
  }
  if (!k)
    return FrobeniusRefusal{refusal::no_complement};

  auto m = conjugation_exponent(*k, f.c());
  ensure(m.has_value(), "is_c_frobenius: normal kernel not normalized by c");

  FrobeniusStructure s;
  s.c_order = c_order;
  s.c = f.c();
  s.kernel_generator = *k;
  s.kernel_order = n;
  s.action_exponent = *m;
  for (auto const &[p, e] : factorize(n)) {
    u64 q = 1;
    for (unsigned i = 0; i < e; ++i)
      q *= p;
    if ((p - 1) % c_order != 0)
      return FrobeniusRefusal{refusal::c_not_dividing};
    if (multiplicative_order(*m % q, q) != c_order)
      return FrobeniusRefusal{refusal::unfaithful};
    s.primes[p] = PrimeAction{q, *m % q};
  }
  return s;
}

inline FrobeniusStructure require_frobenius(CGroup const &f, char const *what)
{
  auto r = is_c_frobenius(f);
  if (auto const *no = std::get_if<FrobeniusRefusal>(&r))
    throw HypothesisViolated(std::string(what) + ": not C-Frobenius (" + no->reason + ")");
  return std::get<FrobeniusStructure>(r);
}

/// Result of dividing a C-Frobenius group by a normal subgroup.
struct QuotientClassification
{
  enum class Kind
  {
    QuotientOfC,
    Frobenius
  };
  Kind kind;
  Quotient quotient;
  std::optional<CGroup> cgroup;
  std::optional<FrobeniusStructure> structure;
  bool normal_subgroup_form_ok = false; // N <= K or N = (N n C) K
};

inline QuotientClassification quotient_c_group(CGroup const &f, FrobeniusStructure const &s,
                                               PermGroup const &n)
{
  require_subgroup(n, f.group(), "quotient_c_group");
  if (!is_normal(n, f.group()))
    throw NotNormal("quotient_c_group: subgroup is not normal");
  auto kernel = s.kernel();
  auto c1 = intersection(n, f.c_subgroup());
  bool form_ok = is_subgroup(n, kernel) ||
                 (is_subgroup(kernel, n) && n.order() == c1.order() * kernel.order());
  ensure(form_ok, "quotient_c_group: normal subgroup is neither inside K nor C1 K");

  auto q = quotient_by_normal(f.group(), n);
  Perm cbar = q.map(f.c());
  Perm kbar = q.map(s.kernel_generator);
  if (kbar.is_identity())
    return {QuotientClassification::Kind::QuotientOfC, std::move(q), std::nullopt, std::nullopt,
            form_ok};
  CGroup qc(q.group, cbar);
  auto qs = require_frobenius(qc, "quotient_c_group");
  return {QuotientClassification::Kind::Frobenius, std::move(q), qc, qs, form_ok};
}

/// Transitive action of a C-Frobenius group, with the base point chosen so
/// that its stabilizer splits as C1 K1.
struct OrbitReport
{
  point base_point = 0;
  PermGroup stabilizer;
  PermGroup c1;
  PermGroup k1;
  std::vector<point> c_orbit_of_base;
  std::vector<point> free_points;
};

/// The natural action of f on its own points.
inline GroupHom natural_action(PermGroup const &f)
{
  return GroupHom::from_generator_images(f, f, f.generators());
}

/// Action of g on the right cosets of h (numbered by least representative).
inline GroupHom coset_action(PermGroup const &g, PermGroup const &h)
{
  auto cosets = right_cosets(g, h);
  std::size_t m = cosets.count();
  if (m > std::numeric_limits<point>::max())
    throw CapExceeded("coset_action: too many cosets");
  std::vector<Perm> imgs;
  for (auto const &x : g.generators()) {
    std::vector<point> img(m);
    for (std::size_t j = 0; j < m; ++j)
      img[j] = static_cast<point>(cosets.coset_of[g.index_of(cosets.reps[j] * x)]);
    imgs.emplace_back(std::move(img));
  }
  auto target = PermGroup::generate(m, imgs);
  return GroupHom::from_generator_images(g, target, imgs);
}

inline OrbitReport orbit_report(CGroup const &f, FrobeniusStructure const &s, GroupHom const &action)
{
  if (!(action.source() == f.group()))
    throw InvalidArgument("orbit_report: action is not defined on F");
  auto const image = action.image();
  std::size_t const npoints = image.degree();
  if (!is_transitive(image))
    throw NotTransitive("orbit_report: action is not transitive");
  auto const csub = f.c_subgroup();
  auto const kernel = s.kernel();
  auto const &g = f.group();

  std::vector<Perm> cpows;
  for (Perm x = f.c(); !x.is_identity(); x *= f.c())
    cpows.push_back(action(x));

  OrbitReport r;
  bool found = false;
  for (std::size_t L = 0; L < npoints && !found; ++L) {
    auto stab = filter_subgroup(g, [&](Perm const &x) { return action(x)[L] == L; });
    auto c1 = intersection(stab, csub);
    auto k1 = intersection(stab, kernel);
    if (stab.order() != c1.order() * k1.order())
      continue;
    r.base_point = static_cast<point>(L);
    r.stabilizer = stab;
    r.c1 = c1;
    r.k1 = k1;
    found = true;
  }
  ensure(found, "orbit_report: no point stabilizer of the form C1 K1");

  std::vector<bool> in_orbit(npoints);
  in_orbit[r.base_point] = true;
  r.c_orbit_of_base.push_back(r.base_point);
  for (auto const &x : cpows)
    if (!in_orbit[x[r.base_point]]) {
      in_orbit[x[r.base_point]] = true;
      r.c_orbit_of_base.push_back(x[r.base_point]);
    }
  std::sort(r.c_orbit_of_base.begin(), r.c_orbit_of_base.end());
  for (std::size_t x = 0; x < npoints; ++x) {
    bool free = true;
    for (auto const &y : cpows)
      if (y[x] == x) {
        free = false;
        break;
      }
    if (free)
      r.free_points.push_back(static_cast<point>(x));
    else
      ensure(in_orbit[x], "orbit_report: point outside the C-orbit of the base has a nontrivial C-stabilizer");
  }
  return r;
}

} // namespace forge
