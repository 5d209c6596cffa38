#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "caps.hpp"
#include "error.hpp"
#include "numtheory.hpp"
#include "perm.hpp"

namespace forge
{

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

namespace detail
{

// Open-addressing index from permutations to their position in a vector.
class PermIndex
{
public:
  void reserve(std::size_t n)
  {
    std::size_t want = 16;
    while (want < 2 * n + 2)
      want <<= 1;
    if (want <= slots_.size())
      return;
    slots_.assign(want, 0);
    mask_ = want - 1;
  }

  void rebuild(std::vector<Perm> const &elements)
  {
    slots_.clear();
    reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
      place(elements, i);
  }

  std::size_t find(std::vector<Perm> const &elements, Perm const &p) const
  {
    if (slots_.empty())
      return npos;
    for (std::size_t s = p.hash() & mask_;; s = (s + 1) & mask_) {
      auto v = slots_[s];
      if (v == 0)
        return npos;
      if (elements[v - 1] == p)
        return v - 1;
    }
  }

  // Caller appended elements.back(); grows the table as needed.
  void insert_last(std::vector<Perm> const &elements)
  {
    if (2 * elements.size() + 2 > slots_.size())
      rebuild(elements);
    else
      place(elements, elements.size() - 1);
  }

private:
  void place(std::vector<Perm> const &elements, std::size_t i)
  {
    std::size_t s = elements[i].hash() & mask_;
    while (slots_[s] != 0)
      s = (s + 1) & mask_;
    slots_[s] = static_cast<std::uint32_t>(i + 1);
  }

  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

// Incremental closure (Dimino): the element list is always a union of right
// cosets of the previous stage, so a new generator only needs coset
// representatives to be multiplied through.
class ClosureBuilder
{
public:
  ClosureBuilder(std::size_t degree, std::size_t cap) : degree_(degree), cap_(cap)
  {
    elements_.push_back(Perm::identity(degree));
    index_.rebuild(elements_);
  }

  ClosureBuilder(std::size_t degree, std::vector<Perm> gens, std::vector<Perm> elements,
                 std::size_t cap)
      : degree_(degree), cap_(cap), gens_(std::move(gens)), elements_(std::move(elements))
  {
    index_.rebuild(elements_);
  }

  bool contains(Perm const &p) const { return index_.find(elements_, p) != npos; }

  // Returns false if s was already in the group.
  bool extend(Perm const &s)
  {
    if (s.degree() != degree_)
      throw InvalidArgument("generator degree mismatch");
    if (contains(s)) {
      gens_.push_back(s);
      return false;
    }
    gens_.push_back(s);
    std::size_t const base_size = elements_.size();
    std::vector<Perm> reps{Perm::identity(degree_)};
    add_coset(s, base_size);
    reps.push_back(s);
    for (std::size_t r = 1; r < reps.size(); ++r) {
      for (auto const &g : gens_) {
        Perm x = reps[r] * g;
        if (!contains(x)) {
          add_coset(x, base_size);
          reps.push_back(std::move(x));
        }
      }
    }
    return true;
  }

  std::size_t size() const { return elements_.size(); }
  std::vector<Perm> const &generators() const { return gens_; }
  std::vector<Perm> &&take_elements() { return std::move(elements_); }
  std::vector<Perm> &&take_generators() { return std::move(gens_); }

private:
  void add_coset(Perm const &x, std::size_t base_size)
  {
    if (elements_.size() + base_size > cap_)
      throw CapExceeded("group closure exceeds the cap of " + std::to_string(cap_) + " elements");
    for (std::size_t i = 0; i < base_size; ++i) {
      elements_.push_back(elements_[i] * x);
      index_.insert_last(elements_);
    }
  }

  std::size_t degree_;
  std::size_t cap_;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
  PermIndex index_;
};

} // namespace detail

/// A permutation group with a materialized, lexicographically sorted
/// element list. Immutable and cheap to copy.
class PermGroup
{
  struct Data
  {
    std::size_t degree = 0;
    std::vector<Perm> generators;
    std::vector<Perm> elements;
    detail::PermIndex index;
  };

public:
  PermGroup() : PermGroup(trivial(1)) {}

  static PermGroup trivial(std::size_t degree) { return generate(degree, {}); }

  /// Closure of the generators. The generator list is kept as given.
  static PermGroup generate(std::size_t degree, std::vector<Perm> const &gens,
                            std::size_t cap = caps().closure)
  {
    if (degree == 0)
      throw InvalidArgument("degree must be positive");
    detail::ClosureBuilder b(degree, cap);
    for (auto const &g : gens)
      b.extend(g);
    return finish(degree, b.take_generators(), b.take_elements());
  }

  /// Builds a group from a set already known to be closed. The generating
  /// set is chosen greedily in lexicographic order.
  static PermGroup from_elements(std::size_t degree, std::vector<Perm> elements)
  {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    detail::ClosureBuilder b(degree, std::numeric_limits<std::size_t>::max());
    std::vector<Perm> gens;
    for (auto const &x : elements) {
      if (b.size() == elements.size())
        break;
      if (!b.contains(x)) {
        b.extend(x);
        gens.push_back(x);
      }
    }
    ensure(b.size() == elements.size(), "from_elements: element set is not a group");
    return finish(degree, std::move(gens), std::move(elements));
  }

  /// Extends this group by one more generator.
  PermGroup extended(Perm const &y, std::size_t cap = caps().closure) const
  {
    detail::ClosureBuilder b(degree(), generators(), elements(), cap);
    b.extend(y);
    return finish(degree(), b.take_generators(), b.take_elements());
  }

  PermGroup extended(std::vector<Perm> const &ys, std::size_t cap = caps().closure) const
  {
    detail::ClosureBuilder b(degree(), generators(), elements(), cap);
    for (auto const &y : ys)
      b.extend(y);
    return finish(degree(), b.take_generators(), b.take_elements());
  }

  /// Same group with a different generating list (must generate it).
  PermGroup with_generators(std::vector<Perm> gens) const
  {
    for (auto const &g : gens)
      if (!contains(g))
        throw InvalidArgument("with_generators: generator outside the group");
    auto d = std::make_shared<Data>(*d_);
    d->generators = std::move(gens);
    PermGroup r(std::move(d));
    ensure(generate(degree(), r.generators()).order() == order(),
           "with_generators: list does not generate the group");
    return r;
  }

  std::size_t degree() const { return d_->degree; }
  std::size_t order() const { return d_->elements.size(); }
  std::vector<Perm> const &generators() const { return d_->generators; }
  std::vector<Perm> const &elements() const { return d_->elements; }
  Perm const &element(std::size_t i) const { return d_->elements[i]; }
  Perm identity() const { return Perm::identity(degree()); }

  std::size_t index_of(Perm const &p) const
  {
    if (p.degree() != degree())
      return npos;
    return d_->index.find(d_->elements, p);
  }

  bool contains(Perm const &p) const { return index_of(p) != npos; }

  bool is_trivial() const { return order() == 1; }

  bool operator==(PermGroup const &other) const
  {
    return degree() == other.degree() && elements() == other.elements();
  }

  /// Orders groups by size, then by sorted element list.
  bool less_than(PermGroup const &other) const
  {
    if (order() != other.order())
      return order() < other.order();
    return elements() < other.elements();
  }

private:
  explicit PermGroup(std::shared_ptr<Data const> d) : d_(std::move(d)) {}

  static PermGroup finish(std::size_t degree, std::vector<Perm> gens, std::vector<Perm> elements)
  {
    auto d = std::make_shared<Data>();
    d->degree = degree;
    std::sort(elements.begin(), elements.end());
    d->generators = std::move(gens);
    d->elements = std::move(elements);
    d->index.rebuild(d->elements);
    return PermGroup(std::move(d));
  }

  friend PermGroup make_group_unchecked(std::size_t, std::vector<Perm>, std::vector<Perm>);

  std::shared_ptr<Data const> d_;
};

// For callers that have an already-closed sorted or unsorted element set and
// a generating list for it.
inline PermGroup make_group_unchecked(std::size_t degree, std::vector<Perm> gens,
                                      std::vector<Perm> elements)
{
  return PermGroup::finish(degree, std::move(gens), std::move(elements));
}

// ---------------------------------------------------------------------------
// Subgroup relations

inline bool is_subgroup(PermGroup const &h, PermGroup const &g)
{
  if (h.degree() != g.degree() || g.order() % h.order() != 0)
    return false;
  for (auto const &x : h.generators())
    if (!g.contains(x))
      return false;
  return true;
}

inline void require_subgroup(PermGroup const &h, PermGroup const &g, char const *what)
{
  if (!is_subgroup(h, g))
    throw InvalidArgument(std::string(what) + ": not a subgroup");
}

/// Lagrange plus |G| dividing degree!.
inline bool lagrange_ok(PermGroup const &h, PermGroup const &g)
{
  return g.order() % h.order() == 0 && divides_factorial(g.order(), g.degree());
}

inline PermGroup conjugate(PermGroup const &h, Perm const &g)
{
  std::vector<Perm> gens, elems;
  gens.reserve(h.generators().size());
  for (auto const &x : h.generators())
    gens.push_back(x.conjugate(g));
  elems.reserve(h.order());
  for (auto const &x : h.elements())
    elems.push_back(x.conjugate(g));
  return make_group_unchecked(h.degree(), std::move(gens), std::move(elems));
}

/// True when every generator conjugate of h by g lies in h.
inline bool normalizes(Perm const &g, PermGroup const &h)
{
  for (auto const &x : h.generators())
    if (!h.contains(x.conjugate(g)))
      return false;
  return true;
}

inline bool is_normal(PermGroup const &n, PermGroup const &g)
{
  for (auto const &x : g.generators())
    if (!normalizes(x, n))
      return false;
  return true;
}

template <class Pred>
PermGroup filter_subgroup(PermGroup const &g, Pred pred)
{
  std::vector<Perm> keep;
  for (auto const &x : g.elements())
    if (pred(x))
      keep.push_back(x);
  return PermGroup::from_elements(g.degree(), std::move(keep));
}

inline PermGroup normalizer(PermGroup const &g, PermGroup const &h)
{
  return filter_subgroup(g, [&](Perm const &x) { return normalizes(x, h); });
}

inline PermGroup centralizer(PermGroup const &g, Perm const &y)
{
  return filter_subgroup(g, [&](Perm const &x) { return x * y == y * x; });
}

inline PermGroup centralizer(PermGroup const &g, PermGroup const &h)
{
  return filter_subgroup(g, [&](Perm const &x) {
    for (auto const &y : h.generators())
      if (x * y != y * x)
        return false;
    return true;
  });
}

inline PermGroup center(PermGroup const &g) { return centralizer(g, g); }

inline PermGroup intersection(PermGroup const &a, PermGroup const &b)
{
  PermGroup const &small = a.order() <= b.order() ? a : b;
  PermGroup const &large = a.order() <= b.order() ? b : a;
  return filter_subgroup(small, [&](Perm const &x) { return large.contains(x); });
}

inline PermGroup join(PermGroup const &a, PermGroup const &b, std::size_t cap = caps().closure)
{
  if (a.order() >= b.order())
    return a.extended(b.generators(), cap);
  return b.extended(a.generators(), cap);
}

/// Order of the product set HK.
inline std::size_t product_order(PermGroup const &h, PermGroup const &k)
{
  return h.order() * k.order() / intersection(h, k).order();
}

/// Smallest normal subgroup of g containing the given elements.
inline PermGroup normal_closure(PermGroup const &g, std::vector<Perm> const &xs,
                                std::size_t cap = caps().closure)
{
  detail::ClosureBuilder b(g.degree(), cap);
  for (auto const &x : xs)
    if (!b.contains(x))
      b.extend(x);
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    for (auto const &t : g.generators()) {
      Perm y = b.generators()[i].conjugate(t);
      if (!b.contains(y))
        b.extend(y);
    }
  }
  auto gens = b.generators();
  return make_group_unchecked(g.degree(), std::move(gens), b.take_elements());
}

inline PermGroup normal_closure(PermGroup const &g, PermGroup const &h)
{
  return normal_closure(g, h.generators());
}

inline bool is_abelian(PermGroup const &g)
{
  auto const &gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (gs[i] * gs[j] != gs[j] * gs[i])
        return false;
  return true;
}

/// Lexicographically least generator of a cyclic group, or npos-like empty.
inline std::optional<Perm> cyclic_generator(PermGroup const &g)
{
  if (!is_abelian(g))
    return std::nullopt;
  for (auto const &x : g.elements())
    if (x.order() == g.order())
      return x;
  return std::nullopt;
}

inline bool is_cyclic(PermGroup const &g) { return cyclic_generator(g).has_value(); }

inline PermGroup cyclic_subgroup(Perm const &x)
{
  std::vector<Perm> elems;
  Perm y = Perm::identity(x.degree());
  do {
    elems.push_back(y);
    y *= x;
  } while (!y.is_identity());
  return make_group_unchecked(x.degree(), {x}, std::move(elems));
}

inline PermGroup derived_subgroup(PermGroup const &g)
{
  std::vector<Perm> comms;
  auto const &gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      Perm c = commutator(gs[i], gs[j]);
      if (!c.is_identity())
        comms.push_back(c);
    }
  return normal_closure(g, comms);
}

inline bool is_solvable(PermGroup g)
{
  while (!g.is_trivial()) {
    auto d = derived_subgroup(g);
    if (d.order() == g.order())
      return false;
    g = d;
  }
  return true;
}

inline bool is_p_group(PermGroup const &g, u64 p)
{
  return p_part(g.order(), p) == g.order();
}

// ---------------------------------------------------------------------------
// Cosets, classes, orbits

/// Right cosets Hg of h in g. Representatives are the least element of each
/// coset and cosets are numbered in increasing order of representative.
struct CosetTable
{
  std::vector<std::uint32_t> coset_of; // indexed by element index of g
  std::vector<Perm> reps;

  std::size_t count() const { return reps.size(); }
};

inline CosetTable right_cosets(PermGroup const &g, PermGroup const &h)
{
  CosetTable t;
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  t.coset_of.assign(g.order(), unset);
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (t.coset_of[i] != unset)
      continue;
    auto id = static_cast<std::uint32_t>(t.reps.size());
    Perm const &x = g.element(i);
    t.reps.push_back(x);
    for (auto const &y : h.elements()) {
      auto j = g.index_of(y * x);
      ensure(j != npos, "right_cosets: subgroup is not contained in the group");
      t.coset_of[j] = id;
    }
  }
  return t;
}

struct ConjugacyClass
{
  Perm rep; // least element of the class
  std::vector<std::uint32_t> members;
};

/// Classes in order of their least element.
inline std::vector<ConjugacyClass> conjugacy_classes(PermGroup const &g)
{
  std::vector<ConjugacyClass> out;
  std::vector<bool> seen(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i])
      continue;
    ConjugacyClass cls{g.element(i), {static_cast<std::uint32_t>(i)}};
    seen[i] = true;
    for (std::size_t k = 0; k < cls.members.size(); ++k) {
      for (auto const &t : g.generators()) {
        auto j = g.index_of(g.element(cls.members[k]).conjugate(t));
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

inline std::vector<point> orbit(PermGroup const &g, point start)
{
  std::vector<point> orb{start};
  std::vector<bool> seen(g.degree());
  seen[start] = true;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (auto const &t : g.generators()) {
      point y = t[orb[k]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

inline bool is_transitive(PermGroup const &g)
{
  return orbit(g, 0).size() == g.degree();
}

inline PermGroup stabilizer(PermGroup const &g, point x)
{
  return filter_subgroup(g, [&](Perm const &p) { return p[x] == x; });
}

/// Least element y of g with h^y == k, if any.
inline std::optional<Perm> conjugating_element(PermGroup const &g, PermGroup const &h,
                                               PermGroup const &k)
{
  if (h.order() != k.order())
    return std::nullopt;
  for (auto const &y : g.elements()) {
    bool ok = true;
    for (auto const &x : h.generators())
      if (!k.contains(x.conjugate(y))) {
        ok = false;
        break;
      }
    if (ok)
      return y;
  }
  return std::nullopt;
}

} // namespace forge
