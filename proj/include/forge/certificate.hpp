#pragma once

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "caps.hpp"
#include "error.hpp"
#include "frobenius.hpp"
#include "io.hpp"
#include "lifting.hpp"
#include "numtheory.hpp"
#include "perm_group.hpp"
#include "towers.hpp"

namespace forge::cert
{

using json = nlohmann::json;

inline constexpr char const *version = "forge-cert/1";

inline std::string sha256_hex(std::string const &bytes)
{
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalInconsistency("sha256: digest failed");
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

struct Check
{
  std::string name;
  bool pass = false;
  json witness;

  json to_json() const { return {{"name", name}, {"status", pass ? "pass" : "fail"}, {"witness", witness}}; }
};

using Checks = std::vector<Check>;

inline json checks_to_json(Checks const &cs)
{
  json a = json::array();
  for (auto const &c : cs)
    a.push_back(c.to_json());
  return a;
}

inline json trace_to_json(std::vector<TraceStep> const &trace)
{
  json a = json::array();
  for (auto const &t : trace)
    a.push_back({{"strategy", to_string(t.strategy)},
                 {"depth", t.depth},
                 {"group_order", t.group_order},
                 {"normal_order", t.normal_order}});
  return a;
}

inline json caps_to_json(Caps const &c)
{
  return {{"closure", c.closure}, {"automorphism", c.automorphism}, {"oracle", c.oracle}};
}

inline json factorization_to_json(std::map<u64, unsigned> const &f)
{
  json j = json::object();
  for (auto const &[p, e] : f)
    j[std::to_string(p)] = e;
  return j;
}

// Elementary checks used by every kind. They only use closure, membership
// and arithmetic on element orders.

inline Checks frobenius_witness_checks(std::string const &prefix, PermGroup const &h, Perm const &c, Perm const &k)
{
  Checks out;
  out.push_back({prefix + "c in group", h.contains(c) && !c.is_identity(), c.to_cycles()});
  out.push_back({prefix + "kernel generator in group", h.contains(k), k.to_cycles()});
  auto const co = c.order(), ko = k.order();
  out.push_back({prefix + "|F| = |C| |K|", h.order() == co * ko && ko > 1,
                 {{"F", h.order()}, {"C", co}, {"K", ko}}});
  auto kk = cyclic_subgroup(k);
  bool normal = true;
  for (auto const &x : h.generators())
    normal = normal && normalizes(x, kk);
  out.push_back({prefix + "kernel normal", normal, nullptr});
  out.push_back({prefix + "C n K = 1", intersection(cyclic_subgroup(c), kk).order() == 1, nullptr});
  auto m = conjugation_exponent(k, c);
  bool fpf = m.has_value();
  if (fpf) {
    u64 mj = 1;
    for (u64 j = 1; j < co; ++j) {
      mj = mj * *m % ko;
      fpf = fpf && std::gcd((mj + ko - 1) % ko, static_cast<u64>(ko)) == 1;
    }
  }
  out.push_back({prefix + "C acts fixed-point-freely on K", fpf, m ? json(*m) : json(nullptr)});
  return out;
}

inline bool all_pass(Checks const &cs)
{
  return std::all_of(cs.begin(), cs.end(), [](Check const &c) { return c.pass; });
}

inline void append(Checks &to, Checks const &from) { to.insert(to.end(), from.begin(), from.end()); }

// check-frobenius

inline json frobenius_objects(io::NamedCGroup const &f, FrobeniusResult const &r)
{
  json o;
  o["cgroup"] = io::cgroup_to_json(f.group, f.name);
  if (auto const *s = std::get_if<FrobeniusStructure>(&r)) {
    o["verdict"] = "frobenius";
    o["kernel_generator"] = s->kernel_generator.to_cycles();
    o["action_exponent"] = s->action_exponent;
  } else {
    o["verdict"] = "refusal";
    o["reason"] = std::get<FrobeniusRefusal>(r).reason;
  }
  return o;
}

inline Checks frobenius_checks(json const &o)
{
  auto f = io::cgroup_from_json(o.at("cgroup"), "objects.cgroup").group;
  if (o.at("verdict") == "frobenius") {
    auto k = Perm::from_cycles(o.at("kernel_generator").get<std::string>(), f.group().degree());
    return frobenius_witness_checks("", f.group(), f.c(), k);
  }
  // Refusal: no element generates a normal complement on which C acts
  // fixed-point-freely.
  auto const &g = f.group();
  auto const n = g.order() / f.c_order();
  std::size_t candidates = 0;
  bool found = false;
  for (auto const &x : g.elements()) {
    if (n < 2 || x.order() != n)
      continue;
    ++candidates;
    if (all_pass(frobenius_witness_checks("", g, f.c(), x))) {
      found = true;
      break;
    }
  }
  return {{"no kernel generator exists", !found, {{"candidates", candidates}, {"reason", o.at("reason")}}}};
}

// lift

inline json lift_objects(CGroup const &g, PermGroup const &a, LiftResult const &r, LiftOptions const &opts,
                         std::string const &name)
{
  json o;
  o["cgroup"] = io::cgroup_to_json(g, name);
  o["normal"] = io::group_to_json(a);
  o["lift"] = io::group_to_json(r.h);
  o["kernel_generator"] = r.structure.kernel_generator.to_cycles();
  o["options"] = {{"prime_power_fast_path", opts.prime_power_fast_path}, {"allow_oracle", opts.allow_oracle}};
  if (r.oracle_witness)
    o["oracle_witness"] = r.oracle_witness->to_cycles();
  o["caps"] = caps_to_json(caps());
  return o;
}

inline Checks lift_checks(json const &o)
{
  auto g = io::cgroup_from_json(o.at("cgroup"), "objects.cgroup").group;
  auto const &G = g.group();
  auto a = io::group_from_json(o.at("normal"), "objects.normal").group;
  auto h = io::group_from_json(o.at("lift"), "objects.lift").group;
  auto k = Perm::from_cycles(o.at("kernel_generator").get<std::string>(), G.degree());

  Checks out;
  out.push_back({"A <= G", is_subgroup(a, G), a.order()});
  out.push_back({"A normal in G", is_normal(a, G), nullptr});
  out.push_back({"C n A = 1", intersection(g.c_subgroup(), a).order() == 1, g.c_order()});
  out.push_back({"H <= G", is_subgroup(h, G), h.order()});
  append(out, frobenius_witness_checks("H: ", h, g.c(), k));
  auto meet = intersection(h, a).order();
  out.push_back({"HA = G", h.order() * a.order() / meet == G.order(),
                 {{"H", h.order()}, {"A", a.order()}, {"H n A", meet}, {"G", G.order()}}});
  return out;
}

// tower-lift

inline json tower_objects(QuotientTower const &t, std::vector<TowerLevel> const &levels)
{
  json o;
  o["tower"] = io::tower_to_json(t);
  o["levels"] = json::array();
  for (auto const &l : levels) {
    json pr = json::array();
    for (auto p : l.pruned)
      pr.push_back(p);
    o["levels"].push_back({{"group", io::group_to_json(l.f)},
                           {"kernel_generator", l.structure.kernel_generator.to_cycles()},
                           {"pruned_primes", pr},
                           {"trace", trace_to_json(l.trace)}});
  }
  return o;
}

inline Checks tower_checks(json const &o)
{
  auto t = io::tower_from_json(o.at("tower"), "objects.tower");
  auto const &lv = o.at("levels");
  Checks out;
  if (lv.size() != t.levels.size()) {
    out.push_back({"one subgroup per level", false, lv.size()});
    return out;
  }
  std::set<u64> primes0;
  std::vector<PermGroup> fs;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    auto const &ti = t.levels[i];
    auto pre = "level " + std::to_string(i) + ": ";
    auto f = io::group_from_json(lv[i].at("group"), "objects.levels").group;
    auto k = Perm::from_cycles(lv[i].at("kernel_generator").get<std::string>(), ti.group().degree());
    out.push_back({pre + "F <= T", f.degree() == ti.group().degree() && is_subgroup(f, ti.group()), f.order()});
    append(out, frobenius_witness_checks(pre, f, ti.c(), k));
    std::set<u64> primes;
    for (auto p : prime_divisors(k.order()))
      primes.insert(p);
    if (i == 0)
      primes0 = primes;
    out.push_back({pre + "kernel primes", primes == primes0, json(std::vector<u64>(primes.begin(), primes.end()))});
    if (i > 0)
      out.push_back({pre + "maps onto the level below", t.maps[i - 1].image_of(f) == fs.back(), nullptr});
    fs.push_back(f);
  }
  return out;
}

// embed

inline json embed_objects(io::NamedGroup const &b, GroupHom const &beta, CGroup const &f,
                          FrobeniusStructure const &s, FreeProductEpimorphism const &e)
{
  json o;
  o["B"] = io::group_to_json(b.group, b.name);
  o["beta"] = io::perms_to_json(beta.images());
  o["F"] = io::cgroup_to_json(f);
  o["kernel_generator"] = s.kernel_generator.to_cycles();
  o["hom_b"] = io::perms_to_json(e.hom_b.images());
  o["commutator"] = e.commutator.to_cycles();
  return o;
}

inline Checks embed_checks(json const &o)
{
  auto b = io::group_from_json(o.at("B"), "objects.B").group;
  auto f = io::cgroup_from_json(o.at("F"), "objects.F").group;
  auto const &F = f.group();
  auto csub = f.c_subgroup();
  auto k = Perm::from_cycles(o.at("kernel_generator").get<std::string>(), F.degree());
  auto beta = io::hom_from_json(o.at("beta"), b, csub, "objects.beta");
  auto hom_b = io::hom_from_json(o.at("hom_b"), b, F, "objects.hom_b");

  Checks out;
  out.push_back({"beta onto C", beta.is_surjective(), csub.order()});
  append(out, frobenius_witness_checks("F: ", F, f.c(), k));
  bool formula = true;
  for (auto const &x : b.generators())
    formula = formula && hom_b(x) == beta(x).conjugate(k);
  out.push_back({"hom_B(b) = beta(b)^k", formula, nullptr});
  Perm comm = k.inverse() * k.conjugate(f.c());
  bool gen = comm.order() == k.order();
  out.push_back({"k^-1 k^c generates K", gen, comm.to_cycles()});
  auto both = join(hom_b.image(), csub).order();
  out.push_back({"images generate F", both == F.order(), both});
  out.push_back({"generation criteria agree", gen == (both == F.order()), nullptr});
  return out;
}

// pop

inline json pop_objects(PopReport const &r)
{
  json o;
  o["level"] = r.level;
  o["exponent"] = r.exponent;
  o["F"] = io::cgroup_to_json(r.f);
  o["kernel_generator"] = r.structure.kernel_generator.to_cycles();
  o["factor"] = io::group_to_json(r.shadow.g1);
  o["phi1"] = io::perms_to_json(r.shadow.phi1.images());
  o["phi2"] = io::perms_to_json(r.shadow.phi2.images());
  o["H"] = io::group_to_json(r.h);
  o["order_factorization"] = factorization_to_json(r.order_factorization);
  return o;
}

inline Checks pop_checks(json const &o)
{
  auto f = io::cgroup_from_json(o.at("F"), "objects.F").group;
  auto const &T = f.group();
  auto factor = io::group_from_json(o.at("factor"), "objects.factor").group;
  auto phi1 = io::hom_from_json(o.at("phi1"), factor, T, "objects.phi1");
  auto phi2 = io::hom_from_json(o.at("phi2"), factor, T, "objects.phi2");
  auto h = io::group_from_json(o.at("H"), "objects.H").group;
  auto k = Perm::from_cycles(o.at("kernel_generator").get<std::string>(), T.degree());

  Checks out;
  out.push_back({"phi1 injective", phi1.is_injective(), nullptr});
  out.push_back({"phi2 injective", phi2.is_injective(), nullptr});
  auto im1 = phi1.image(), im2 = phi2.image();
  out.push_back({"factor images generate T", join(im1, im2).order() == T.order(), T.order()});
  out.push_back({"H <= T", is_subgroup(h, T), h.order()});
  append(out, frobenius_witness_checks("H: ", h, f.c(), k));
  auto m1 = intersection(h, im1).order(), m2 = intersection(h, im2).order();
  out.push_back({"|H n phi2(G2)| = 6", m2 == 6, m2});
  out.push_back({"condition 1: intersections are not of prime power order",
                 !is_prime_power(m1) && !is_prime_power(m2), {{"phi1", m1}, {"phi2", m2}}});
  std::size_t scanned = 0;
  bool inside = false;
  for (auto const &g : T.elements())
    for (auto const *im : {&im1, &im2}) {
      ++scanned;
      auto conj = conjugate(*im, g);
      bool all = true;
      for (auto const &x : h.generators())
        all = all && conj.contains(x);
      inside = inside || all;
    }
  out.push_back({"condition 2: H lies in no conjugate of a factor image", !inside, {{"conjugates", scanned}}});
  out.push_back({"order factorization", factorization_to_json(factorize(T.order())) == o.at("order_factorization"),
                 o.at("order_factorization")});
  return out;
}

inline Checks run_checks(std::string const &kind, json const &objects)
{
  if (kind == "check-frobenius")
    return frobenius_checks(objects);
  if (kind == "lift")
    return lift_checks(objects);
  if (kind == "tower-lift")
    return tower_checks(objects);
  if (kind == "embed")
    return embed_checks(objects);
  if (kind == "pop")
    return pop_checks(objects);
  throw ParseError("certificate: unknown kind \"" + kind + "\"");
}

struct Input
{
  std::string role;
  std::string sha256;
};

inline json make_certificate(std::string const &kind, std::vector<std::string> const &command,
                             std::vector<Input> const &inputs, json objects, json trace = json::array())
{
  json c;
  c["version"] = version;
  c["kind"] = kind;
  c["command"] = command;
  c["inputs"] = json::array();
  for (auto const &i : inputs)
    c["inputs"].push_back({{"role", i.role}, {"sha256", i.sha256}});
  c["checks"] = checks_to_json(run_checks(kind, objects));
  c["objects"] = std::move(objects);
  c["trace"] = std::move(trace);
  return c;
}

inline bool certificate_passes(json const &c)
{
  for (auto const &ch : c.at("checks"))
    if (ch.at("status") != "pass")
      return false;
  return true;
}

struct VerifyReport
{
  bool reproduced = true;
  bool all_pass = true;
  std::vector<std::string> mismatches;
};

/// Recomputes every check from the serialized objects alone.
inline VerifyReport verify(json const &c)
{
  for (auto const *f : {"version", "kind", "objects", "checks"})
    if (!c.contains(f))
      throw ParseError(std::string("certificate: missing field \"") + f + "\"");
  if (c.at("version") != version)
    throw ParseError("certificate: unsupported version " + c.at("version").dump());

  std::optional<ScopedCaps> raised;
  auto const &o = c.at("objects");
  if (o.contains("caps")) {
    auto const &k = o.at("caps");
    Caps need = caps();
    need.closure = std::max(need.closure, k.value("closure", need.closure));
    need.automorphism = std::max(need.automorphism, k.value("automorphism", need.automorphism));
    need.oracle = std::max(need.oracle, k.value("oracle", need.oracle));
    raised.emplace(need);
  }

  VerifyReport r;
  auto fresh = checks_to_json(run_checks(c.at("kind").get<std::string>(), o));
  auto const &recorded = c.at("checks");
  if (fresh.size() != recorded.size()) {
    r.reproduced = false;
    r.mismatches.push_back("number of checks differs");
  }
  for (std::size_t i = 0; i < std::min(fresh.size(), recorded.size()); ++i)
    if (fresh[i] != recorded[i]) {
      r.reproduced = false;
      r.mismatches.push_back(fresh[i].value("name", "?"));
    }
  for (auto const &ch : fresh)
    if (ch.at("status") != "pass")
      r.all_pass = false;
  return r;
}

} // namespace forge::cert
