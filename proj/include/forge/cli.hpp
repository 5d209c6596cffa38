#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <unistd.h>

#include "caps.hpp"
#include "catalog.hpp"
#include "certificate.hpp"
#include "error.hpp"
#include "frobenius.hpp"
#include "io.hpp"
#include "lifting.hpp"
#include "towers.hpp"

namespace forge::cli
{

using json = nlohmann::json;

enum ExitCode : int
{
  exit_ok = 0,
  exit_refusal = 1,
  exit_error = 2,
};

inline std::string certificate_text(json const &c) { return c.dump(2) + "\n"; }

/// Writes through a temporary file in the same directory and renames it.
inline void write_atomic(std::filesystem::path const &path, std::string const &text)
{
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
      throw InvalidArgument(path.string() + ": cannot write");
    f << text;
    f.flush();
    if (!f)
      throw InvalidArgument(path.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

namespace detail
{

struct Loaded
{
  json doc;
  cert::Input input;
};

inline Loaded load(std::string const &path, std::string const &role)
{
  auto text = io::read_file(path);
  return {io::parse_json(text, path), {role, cert::sha256_hex(text)}};
}

class Runner
{
public:
  Runner(std::vector<std::string> args, std::ostream &out, std::ostream &err)
      : args_(std::move(args)), out_(out), err_(err)
  {
  }

  void emit(json const &c) const
  {
    auto text = certificate_text(c);
    if (out_path_.empty())
      out_ << text;
    else
      write_atomic(out_path_, text);
  }

  int check_frobenius(std::string const &path)
  {
    auto in = load(path, "cgroup");
    auto f = io::cgroup_from_json(in.doc, path);
    auto r = is_c_frobenius(f.group);
    emit(cert::make_certificate("check-frobenius", args_, {in.input}, cert::frobenius_objects(f, r)));
    if (auto const *no = std::get_if<FrobeniusRefusal>(&r)) {
      err_ << "refusal: " << no->reason << "\n";
      return exit_refusal;
    }
    return exit_ok;
  }

  int lift(std::string const &g_path, std::string const &a_path, bool oracle_only, bool structural_only,
           bool no_fast_path)
  {
    auto gin = load(g_path, "cgroup");
    auto ain = load(a_path, "normal");
    auto g = io::cgroup_from_json(gin.doc, g_path);
    auto a = io::subgroup_from_json(ain.doc, g.group.group(), a_path);
    auto inst = LiftInstance::make(g.group, a);
    LiftOptions opts{.prime_power_fast_path = !no_fast_path, .allow_oracle = !structural_only};
    auto r = oracle_only ? oracle_lift(inst) : lift_frobenius(inst, opts);
    auto objects = cert::lift_objects(g.group, a, r, opts, g.name);
    objects["method"] = oracle_only ? "oracle" : "structural";
    emit(cert::make_certificate("lift", args_, {gin.input, ain.input}, objects, cert::trace_to_json(r.trace)));
    return exit_ok;
  }

  int tower_lift(std::string const &t_path, std::string const &base_path)
  {
    auto tin = load(t_path, "tower");
    auto bin = load(base_path, "base");
    auto t = io::tower_from_json(tin.doc, t_path);
    auto f0 = io::subgroup_from_json(bin.doc, t.levels.front().group(), base_path);
    auto levels = lift_along_tower(t, f0);
    json trace = json::array();
    for (auto const &l : levels)
      trace.push_back(cert::trace_to_json(l.trace));
    emit(cert::make_certificate("tower-lift", args_, {tin.input, bin.input}, cert::tower_objects(t, levels), trace));
    return exit_ok;
  }

  int embed(std::string const &b_path, std::string const &beta_path, std::string const &f_path)
  {
    auto bin = load(b_path, "B");
    auto betain = load(beta_path, "beta");
    auto fin = load(f_path, "F");
    auto b = io::group_from_json(bin.doc, b_path);
    auto f = io::cgroup_from_json(fin.doc, f_path);
    auto const &images = betain.doc.is_object() ? io::detail::field(betain.doc, "images", beta_path) : betain.doc;
    auto beta = io::hom_from_json(images, b.group, f.group.c_subgroup(), beta_path);
    auto s = require_frobenius(f.group, "embed");
    auto e = free_product_epimorphism(beta, f.group);
    emit(cert::make_certificate("embed", args_, {bin.input, betain.input, fin.input},
                                cert::embed_objects(b, beta, f.group, s, e)));
    return exit_ok;
  }

  int pop(std::size_t level)
  {
    auto r = pop_certificate(level);
    emit(cert::make_certificate("pop", args_, {}, cert::pop_objects(r)));
    return exit_ok;
  }

  int verify(std::string const &path)
  {
    auto in = load(path, "certificate");
    auto r = cert::verify(in.doc);
    for (auto const &m : r.mismatches)
      err_ << "mismatch: " << m << "\n";
    out_ << path << ": " << (r.reproduced ? "reproduced" : "not reproduced") << ", "
         << (r.all_pass ? "all checks pass" : "some checks fail") << "\n";
    return r.reproduced && r.all_pass ? exit_ok : exit_refusal;
  }

  int catalog_run(std::string const &only, bool list)
  {
    if (list) {
      for (auto const &e : catalog())
        out_ << e.name << "  " << e.summary << "\n";
      return exit_ok;
    }
    if (!only.empty() && !find_catalog_entry(only))
      throw InvalidArgument("catalog: no entry named \"" + only + "\"");
    if (!out_path_.empty())
      std::filesystem::create_directories(out_path_);
    bool all = true;
    for (auto const &e : catalog()) {
      if (!only.empty() && e.name != only)
        continue;
      Caps need = caps();
      need.closure = std::max(need.closure, e.caps.closure);
      need.automorphism = std::max(need.automorphism, e.caps.automorphism);
      need.oracle = std::max(need.oracle, e.caps.oracle);
      ScopedCaps guard(need);
      auto i = e.build();
      auto inst = LiftInstance::make(i.g, i.a);
      for (bool oracle : {false, true}) {
        auto r = oracle ? oracle_lift(inst) : lift_frobenius(inst, e.options);
        auto objects = cert::lift_objects(i.g, i.a, r, e.options, e.name);
        objects["method"] = oracle ? "oracle" : "structural";
        auto c = cert::make_certificate("lift", {"catalog", e.name}, {}, objects, cert::trace_to_json(r.trace));
        bool pass = cert::certificate_passes(c);
        all = all && pass;
        auto label = e.name + (oracle ? ".oracle" : ".lift");
        if (!out_path_.empty())
          write_atomic(std::filesystem::path(out_path_) / (label + ".json"), certificate_text(c));
        out_ << label << "  |G| = " << i.g.group().order() << "  |A| = " << i.a.order()
             << "  |H| = " << r.h.order() << "  " << (pass ? "pass" : "FAIL") << "\n";
      }
    }
    return all ? exit_ok : exit_refusal;
  }

  int run()
  {
    CLI::App app("Frobenius subgroup lifting and certificates", "forge");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cert::version));

    std::string a1, a2, a3;
    auto *cf = app.add_subcommand("check-frobenius", "decide whether a C-group is C-Frobenius");
    cf->add_option("cgroup", a1, "C-group file")->required();

    bool oracle_only = false, structural_only = false, no_fast = false;
    auto *li = app.add_subcommand("lift", "lift a C-Frobenius subgroup of G/A to G");
    li->add_option("cgroup", a1, "C-group file for G")->required();
    li->add_option("--normal", a2, "group file for the normal subgroup A")->required();
    auto *oo = li->add_flag("--oracle-only", oracle_only, "use the exhaustive search only");
    auto *so = li->add_flag("--structural-only", structural_only, "never fall back to the search");
    oo->excludes(so);
    li->add_flag("--no-fast-path", no_fast, "skip the prime power shortcut");

    auto *tl = app.add_subcommand("tower-lift", "lift along a tower of finite quotients");
    tl->add_option("tower", a1, "tower file")->required();
    tl->add_option("--base", a2, "group file for F_0 inside T_0")->required();

    auto *em = app.add_subcommand("embed", "epimorphism from B * C onto F");
    em->add_option("B", a1, "group file")->required();
    em->add_option("beta", a2, "images of the generators of B in C")->required();
    em->add_option("F", a3, "C-group file")->required();

    std::size_t level = 0;
    auto *po = app.add_subcommand("pop", "certificate for Z/6 x| Z/7^n in a quotient of Z/6 * Z/6");
    po->add_option("--level", level, "n >= 1")->required()->check(CLI::PositiveNumber);

    auto *ve = app.add_subcommand("verify", "recompute every check of a certificate");
    ve->add_option("certificate", a1, "certificate file")->required();

    std::string only;
    bool list = false;
    auto *ca = app.add_subcommand("catalog", "run the built-in lifting instances");
    ca->add_option("--only", only, "run a single entry");
    ca->add_flag("--list", list, "list the entries");

    for (auto *sub : {cf, li, tl, em, po})
      sub->add_option("--out", out_path_, "certificate path");
    ca->add_option("--out", out_path_, "directory for certificates");

    try {
      std::vector<std::string> rev(args_.rbegin(), args_.rend());
      app.parse(rev);
    } catch (CLI::ParseError const &e) {
      auto code = app.exit(e, out_, err_);
      return code == 0 ? exit_ok : exit_error;
    }

    if (*cf)
      return check_frobenius(a1);
    if (*li)
      return lift(a1, a2, oracle_only, structural_only, no_fast);
    if (*tl)
      return tower_lift(a1, a2);
    if (*em)
      return embed(a1, a2, a3);
    if (*po)
      return pop(level);
    if (*ve)
      return verify(a1);
    return catalog_run(only, list);
  }

private:
  std::vector<std::string> args_;
  std::ostream &out_;
  std::ostream &err_;
  std::string out_path_;
};

} // namespace detail

/// Runs one command line (without the program name). Returns the exit code.
inline int run_command(std::vector<std::string> const &args, std::ostream &out = std::cout,
                       std::ostream &err = std::cerr)
{
  try {
    std::optional<ScopedCaps> guard;
    if (char const *env = std::getenv("FORGE_CAPS"))
      guard.emplace(parse_caps(env, caps()));
    return detail::Runner(args, out, err).run();
  } catch (std::exception const &e) {
    bool refusal = dynamic_cast<HypothesisViolated const *>(&e) || dynamic_cast<NotNormal const *>(&e) ||
                   dynamic_cast<NotSurjective const *>(&e) || dynamic_cast<DegenerateKernel const *>(&e) ||
                   dynamic_cast<NotCEpimorphism const *>(&e) || dynamic_cast<OracleRequired const *>(&e);
    err << (refusal ? "refusal: " : "error: ") << e.what() << "\n";
    return refusal ? exit_refusal : exit_error;
  }
}

} // namespace forge::cli
