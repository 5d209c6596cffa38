#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm_group.hpp"

namespace forge
{

/// Homomorphism between permutation groups, given by generator images and
/// tabulated on the whole source.
class GroupHom
{
  struct Data
  {
    PermGroup source;
    PermGroup target;
    std::vector<Perm> images;
    std::vector<std::uint32_t> table; // source index -> target index
  };

public:
  /// Validates the generator images. The map extends to a homomorphism iff
  /// the subgroup of source x target generated by the pairs (g_i, h_i) has
  /// order |source|; equivalently, iff propagating the images along the
  /// Cayley graph of the source never produces two values for one element.
  static GroupHom from_generator_images(PermGroup const &source, PermGroup const &target,
                                        std::vector<Perm> const &images)
  {
    auto const &gens = source.generators();
    if (images.size() != gens.size())
      throw InvalidArgument("hom: need one image per source generator");
    for (auto const &h : images)
      if (!target.contains(h))
        throw NotAHom("hom: generator image " + h.to_cycles() + " is not in the target");

    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    auto d = std::make_shared<Data>();
    d->source = source;
    d->target = target;
    d->images = images;
    d->table.assign(source.order(), unset);

    std::vector<std::uint32_t> image_idx;
    for (auto const &h : images)
      image_idx.push_back(static_cast<std::uint32_t>(target.index_of(h)));

    auto e = source.index_of(source.identity());
    d->table[e] = static_cast<std::uint32_t>(target.index_of(target.identity()));
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(e)};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto x = queue[q];
      Perm const &sx = source.element(x);
      Perm const &tx = target.element(d->table[x]);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        auto y = source.index_of(sx * gens[i]);
        auto ty = static_cast<std::uint32_t>(target.index_of(tx * images[i]));
        if (d->table[y] == unset) {
          d->table[y] = ty;
          queue.push_back(static_cast<std::uint32_t>(y));
        } else if (d->table[y] != ty) {
          throw NotAHom("hom: generator images do not define a homomorphism (graph subgroup order exceeds |source|)");
        }
      }
    }
    return GroupHom(std::move(d));
  }

  /// Trusted construction from a full table; used when the table comes from
  /// an action that is a homomorphism by construction.
  static GroupHom from_table(PermGroup const &source, PermGroup const &target,
                             std::vector<std::uint32_t> table)
  {
    auto d = std::make_shared<Data>();
    d->source = source;
    d->target = target;
    for (auto const &g : source.generators())
      d->images.push_back(target.element(table[source.index_of(g)]));
    d->table = std::move(table);
    return GroupHom(std::move(d));
  }

  static GroupHom identity(PermGroup const &g)
  {
    return from_generator_images(g, g, g.generators());
  }

  PermGroup const &source() const { return d_->source; }
  PermGroup const &target() const { return d_->target; }
  std::vector<Perm> const &images() const { return d_->images; }

  Perm const &operator()(Perm const &x) const
  {
    auto i = source().index_of(x);
    if (i == npos)
      throw InvalidArgument("hom: argument " + x.to_cycles() + " is not in the source");
    return target().element(d_->table[i]);
  }

  std::size_t image_index(std::size_t source_index) const { return d_->table[source_index]; }

  PermGroup image_of(PermGroup const &h) const
  {
    std::vector<Perm> gens;
    for (auto const &x : h.generators())
      gens.push_back((*this)(x));
    return PermGroup::generate(target().degree(), gens);
  }

  PermGroup image() const { return image_of(source()); }

  PermGroup kernel() const
  {
    auto e = target().index_of(target().identity());
    std::vector<Perm> keep;
    for (std::size_t i = 0; i < source().order(); ++i)
      if (d_->table[i] == e)
        keep.push_back(source().element(i));
    return PermGroup::from_elements(source().degree(), std::move(keep));
  }

  /// Full preimage of a subgroup of the target.
  PermGroup preimage(PermGroup const &h) const
  {
    std::vector<Perm> keep;
    for (std::size_t i = 0; i < source().order(); ++i)
      if (h.contains(target().element(d_->table[i])))
        keep.push_back(source().element(i));
    return PermGroup::from_elements(source().degree(), std::move(keep));
  }

  bool is_injective() const { return kernel().order() == 1; }
  bool is_surjective() const { return image().order() == target().order(); }

  /// (this then other): x -> other(this(x)).
  GroupHom then(GroupHom const &other) const
  {
    std::vector<Perm> imgs;
    for (auto const &h : images())
      imgs.push_back(other(h));
    return from_generator_images(source(), other.target(), imgs);
  }

  GroupHom restrict_to(PermGroup const &h) const
  {
    std::vector<Perm> imgs;
    for (auto const &x : h.generators())
      imgs.push_back((*this)(x));
    return from_generator_images(h, target(), imgs);
  }

private:
  explicit GroupHom(std::shared_ptr<Data const> d) : d_(std::move(d)) {}
  std::shared_ptr<Data const> d_;
};

} // namespace forge
