#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "frobenius.hpp"
#include "hom.hpp"
#include "perm_group.hpp"
#include "towers.hpp"

namespace forge::io
{

using json = nlohmann::json;

inline std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(std::string const &text, std::string const &origin)
{
  try {
    return json::parse(text);
  } catch (json::parse_error const &e) {
    throw ParseError(origin + ": " + e.what());
  }
}

namespace detail
{

inline json const &field(json const &j, char const *name, std::string const &where)
{
  if (!j.is_object() || !j.contains(name))
    throw ParseError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

inline std::size_t degree_of(json const &j, std::string const &where)
{
  auto const &d = field(j, "degree", where);
  if (!d.is_number_unsigned() || d.get<std::size_t>() > 65535)
    throw ParseError(where + ".degree: expected an integer in [0, 65535]");
  return d.get<std::size_t>();
}

inline Perm perm_of(json const &j, std::size_t degree, std::string const &where)
{
  if (!j.is_string())
    throw ParseError(where + ": expected a cycle-notation string");
  try {
    return Perm::from_cycles(j.get<std::string>(), degree);
  } catch (ParseError const &e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline std::vector<Perm> perms_of(json const &j, std::size_t degree, std::string const &where)
{
  if (!j.is_array())
    throw ParseError(where + ": expected an array of cycle-notation strings");
  std::vector<Perm> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(perm_of(j[i], degree, where + "[" + std::to_string(i) + "]"));
  return out;
}

} // namespace detail

struct NamedGroup
{
  std::string name;
  PermGroup group;
};

/// {"name": ..., "degree": n, "generators": ["(1 2)", ...]}
inline NamedGroup group_from_json(json const &j, std::string const &where = "group")
{
  auto n = detail::degree_of(j, where);
  auto gens = detail::perms_of(detail::field(j, "generators", where), n, where + ".generators");
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string())
      throw ParseError(where + ".name: expected a string");
    name = j.at("name").get<std::string>();
  }
  return {name, PermGroup::generate(n, gens)};
}

inline json group_to_json(PermGroup const &g, std::string const &name = "")
{
  json j;
  if (!name.empty())
    j["name"] = name;
  j["degree"] = g.degree();
  json gens = json::array();
  for (auto const &x : g.generators())
    gens.push_back(x.to_cycles());
  j["generators"] = gens;
  return j;
}

inline json perms_to_json(std::vector<Perm> const &xs)
{
  json a = json::array();
  for (auto const &x : xs)
    a.push_back(x.to_cycles());
  return a;
}

struct NamedCGroup
{
  std::string name;
  CGroup group;
};

/// Group definition plus "c".
inline NamedCGroup cgroup_from_json(json const &j, std::string const &where = "cgroup")
{
  auto g = group_from_json(j, where);
  auto c = detail::perm_of(detail::field(j, "c", where), g.group.degree(), where + ".c");
  return {g.name, CGroup(g.group, c)};
}

inline json cgroup_to_json(CGroup const &f, std::string const &name = "")
{
  auto j = group_to_json(f.group(), name);
  j["c"] = f.c().to_cycles();
  return j;
}

/// A subgroup of a known group given in the group format.
inline PermGroup subgroup_from_json(json const &j, PermGroup const &parent, std::string const &where)
{
  auto h = group_from_json(j, where).group;
  if (h.degree() != parent.degree())
    throw ValidationError(where + ": degree differs from the ambient group");
  if (!is_subgroup(h, parent))
    throw ValidationError(where + ": not a subgroup of the ambient group");
  return h;
}

/// Images of the source generators, in order.
inline GroupHom hom_from_json(json const &images, PermGroup const &source, PermGroup const &target,
                              std::string const &where)
{
  return GroupHom::from_generator_images(source, target, detail::perms_of(images, target.degree(), where));
}

/// {"levels": [cgroup, ...], "maps": [[images of T_{i+1} generators in T_i], ...]}
inline QuotientTower tower_from_json(json const &j, std::string const &where = "tower")
{
  auto const &lv = detail::field(j, "levels", where);
  auto const &mp = detail::field(j, "maps", where);
  if (!lv.is_array() || !mp.is_array())
    throw ParseError(where + ": levels and maps must be arrays");
  std::vector<CGroup> levels;
  for (std::size_t i = 0; i < lv.size(); ++i)
    levels.push_back(cgroup_from_json(lv[i], where + ".levels[" + std::to_string(i) + "]").group);
  if (mp.size() + 1 != levels.size())
    throw ParseError(where + ".maps: need one map per consecutive pair of levels");
  std::vector<GroupHom> maps;
  for (std::size_t i = 0; i < mp.size(); ++i)
    maps.push_back(hom_from_json(mp[i], levels[i + 1].group(), levels[i].group(),
                                 where + ".maps[" + std::to_string(i) + "]"));
  return QuotientTower::make(std::move(levels), std::move(maps));
}

inline json tower_to_json(QuotientTower const &t)
{
  json j;
  j["levels"] = json::array();
  for (auto const &l : t.levels)
    j["levels"].push_back(cgroup_to_json(l));
  j["maps"] = json::array();
  for (auto const &m : t.maps)
    j["maps"].push_back(perms_to_json(m.images()));
  return j;
}

} // namespace forge::io
