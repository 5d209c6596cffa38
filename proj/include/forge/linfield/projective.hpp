#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../caps.hpp"
#include "../hom.hpp"
#include "../perm_group.hpp"
#include "matrix.hpp"

namespace forge
{

enum class LinearKind
{
  SL,
  GL,
  PSL,
  PGL
};

inline char const *to_string(LinearKind k)
{
  switch (k) {
  case LinearKind::SL: return "SL";
  case LinearKind::GL: return "GL";
  case LinearKind::PSL: return "PSL";
  case LinearKind::PGL: return "PGL";
  }
  return "?";
}

/// A classical linear group as a permutation group. SL and GL act on the
/// nonzero row vectors, PSL and PGL on projective points (vectors whose
/// first nonzero coordinate is 1). Matrices act on the right, v -> v M.
struct ProjectiveGroup
{
  FieldPtr field;
  std::size_t dimension = 0;
  LinearKind kind = LinearKind::PSL;
  std::vector<std::vector<fe>> points;
  std::vector<Matrix> generator_matrices;
  PermGroup group;
  Perm sigma;                // coordinatewise x -> x^p
  std::optional<GroupHom> tau; // inverse transpose, only for dimension >= 3

  bool projective() const { return kind == LinearKind::PSL || kind == LinearKind::PGL; }

  std::vector<fe> normalize(std::vector<fe> v) const
  {
    if (!projective())
      return v;
    auto const &F = *field;
    for (auto x : v)
      if (x != 0) {
        fe s = F.inv(x);
        for (auto &y : v)
          y = F.mul(y, s);
        break;
      }
    return v;
  }

  std::size_t point_index(std::vector<fe> const &v) const
  {
    auto it = std::lower_bound(points.begin(), points.end(), v);
    ensure(it != points.end() && *it == v, "projective group: vector is not a point");
    return static_cast<std::size_t>(it - points.begin());
  }

  Perm perm_of(Matrix const &m) const
  {
    std::vector<point> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      img[i] = static_cast<point>(point_index(normalize(m.apply_right(points[i]))));
    return Perm(std::move(img));
  }
};

inline u64 linear_group_order(std::size_t d, u64 q, LinearKind kind)
{
  u64 sl = 1;
  for (std::size_t i = 0; i < d * (d - 1) / 2; ++i)
    sl *= q;
  for (std::size_t i = 2; i <= d; ++i) {
    u64 qi = 1;
    for (std::size_t j = 0; j < i; ++j)
      qi *= q;
    sl *= qi - 1;
  }
  switch (kind) {
  case LinearKind::SL: return sl;
  case LinearKind::GL: return sl * (q - 1);
  case LinearKind::PSL: return sl / std::gcd(static_cast<u64>(d), q - 1);
  case LinearKind::PGL: return sl;
  }
  return 0;
}

inline ProjectiveGroup projective_group(std::size_t d, u64 q, LinearKind kind)
{
  if (d < 2)
    throw InvalidArgument("projective_group: dimension must be at least 2");
  auto order = linear_group_order(d, q, kind);
  if (order > caps().closure)
    throw CapExceeded("projective_group: order " + std::to_string(order) + " exceeds the closure cap");

  ProjectiveGroup pg;
  pg.field = galois_field_of_order(q);
  pg.dimension = d;
  pg.kind = kind;
  auto const &F = *pg.field;

  std::vector<fe> v(d, 0);
  while (true) {
    std::size_t i = d;
    while (i > 0 && ++v[i - 1] == q)
      v[--i] = 0;
    if (i == 0)
      break;
    if (pg.projective()) {
      auto first = std::find_if(v.begin(), v.end(), [](fe x) { return x != 0; });
      if (*first != 1)
        continue;
    }
    pg.points.push_back(v);
  }
  if (pg.points.size() > std::numeric_limits<point>::max())
    throw CapExceeded("projective_group: too many points");

  // Transvections I + lambda E_ij with lambda over a GF(p)-basis of GF(q).
  fe lambda = 1;
  for (unsigned k = 0; k < F.e(); ++k, lambda = F.mul(lambda, F.primitive()))
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j)
          continue;
        auto m = Matrix::identity(pg.field, d);
        m(i, j) = lambda;
        pg.generator_matrices.push_back(m);
      }
  if (kind == LinearKind::GL || kind == LinearKind::PGL) {
    auto m = Matrix::identity(pg.field, d);
    m(0, 0) = F.primitive();
    pg.generator_matrices.push_back(m);
  }

  std::vector<Perm> gens;
  for (auto const &m : pg.generator_matrices)
    gens.push_back(pg.perm_of(m));
  pg.group = PermGroup::generate(pg.points.size(), gens);
  ensure(pg.group.order() == order, "projective_group: generated order " +
                                        std::to_string(pg.group.order()) + " differs from " +
                                        std::to_string(order));

  std::vector<point> simg(pg.points.size());
  for (std::size_t i = 0; i < pg.points.size(); ++i) {
    auto w = pg.points[i];
    for (auto &x : w)
      x = F.frobenius(x);
    simg[i] = static_cast<point>(pg.point_index(w));
  }
  pg.sigma = Perm(std::move(simg));
  ensure(normalizes(pg.sigma, pg.group), "projective_group: sigma does not normalize the group");

  if (d >= 3) {
    std::vector<Perm> images;
    for (auto const &m : pg.generator_matrices)
      images.push_back(pg.perm_of(m.inverse()->transpose()));
    pg.tau = GroupHom::from_generator_images(pg.group, pg.group, images);
  }
  return pg;
}

} // namespace forge
