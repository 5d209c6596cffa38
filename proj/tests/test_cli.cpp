#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "forge/cli.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace
{

std::string sample(char const *name) { return std::string(FORGE_SAMPLES_DIR) + "/" + name; }

struct Run
{
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(std::string const &name)
{
  auto dir = fs::temp_directory_path() / "forge-test-cli";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST(ParseGroup, Examples)
{
  auto s3 = io::group_from_json(io::parse_json(R"j({"degree":3,"generators":["(1 2)","(1 2 3)"]})j", "s3"));
  EXPECT_EQ(s3.group.order(), 6u);
  auto triv = io::group_from_json(io::parse_json(R"j({"degree":2,"generators":[]})j", "triv"));
  EXPECT_EQ(triv.group.order(), 1u);
  EXPECT_THROW(io::group_from_json(io::parse_json(R"j({"degree":3,"generators":["(1 4)"]})j", "bad")), ParseError);
  EXPECT_THROW(io::parse_json("{", "broken"), ParseError);
  EXPECT_THROW(io::group_from_json(io::parse_json(R"j({"generators":[]})j", "nodeg")), ParseError);
}

TEST(ParseGroup, ErrorsNameTheField)
{
  try {
    io::group_from_json(io::parse_json(R"j({"degree":3,"generators":["(1 2)","(1 4)"]})j", "x"), "g");
    FAIL();
  } catch (ParseError const &e) {
    EXPECT_NE(std::string(e.what()).find("g.generators[1]"), std::string::npos);
  }
}

TEST(ParseGroup, CNotInGroup)
{
  auto j = io::parse_json(R"j({"degree":4,"generators":["(1 2)(3 4)"],"c":"(1 2)"})j", "x");
  EXPECT_THROW(io::cgroup_from_json(j), ValidationError);
}

TEST(ParseGroup, RoundTripIsByteIdentical)
{
  for (auto const *name : {"s3.json", "s4.json", "d4.json", "z6z7.json", "tower.json"}) {
    auto doc = io::parse_json(io::read_file(sample(name)), name);
    std::string once, twice;
    if (doc.contains("levels")) {
      once = io::tower_to_json(io::tower_from_json(doc)).dump();
      twice = io::tower_to_json(io::tower_from_json(io::parse_json(once, "again"))).dump();
    } else {
      auto g = io::cgroup_from_json(doc);
      once = io::cgroup_to_json(g.group, g.name).dump();
      twice = io::cgroup_to_json(io::cgroup_from_json(io::parse_json(once, "again")).group, g.name).dump();
    }
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(RunCommand, PopLevelOne)
{
  auto path = scratch("pop1.json");
  auto r = run({"pop", "--level", "1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto c = io::parse_json(io::read_file(path.string()), "pop1");
  EXPECT_EQ(c.at("version"), "forge-cert/1");
  EXPECT_EQ(c.at("objects").at("F").at("generators").size(), 2u);
  auto f = io::cgroup_from_json(c.at("objects").at("F"));
  EXPECT_EQ(f.group.group().order(), 42u);
  EXPECT_TRUE(cert::certificate_passes(c));
}

TEST(RunCommand, D4Refusal)
{
  auto r = run({"check-frobenius", sample("d4.json"), "--out", scratch("d4.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("|C| does not divide p-1"), std::string::npos);
}

TEST(RunCommand, LiftThenVerify)
{
  auto path = scratch("s4v4.json").string();
  ASSERT_EQ(run({"lift", sample("s4.json"), "--normal", sample("v4.json"), "--out", path}).code, 0);
  auto v = run({"verify", path});
  EXPECT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("reproduced, all checks pass"), std::string::npos);

  auto o = scratch("s4v4-oracle.json").string();
  ASSERT_EQ(run({"lift", sample("s4.json"), "--normal", sample("v4.json"), "--oracle-only", "--out", o}).code, 0);
  EXPECT_EQ(run({"verify", o}).code, 0);
}

TEST(RunCommand, TamperedCertificateFailsVerification)
{
  auto path = scratch("tamper.json").string();
  ASSERT_EQ(run({"lift", sample("s4.json"), "--normal", sample("v4.json"), "--out", path}).code, 0);
  auto c = io::parse_json(io::read_file(path), "tamper");
  c["objects"]["lift"]["generators"] = {"(1 2)", "(1 2 3 4)"};
  cli::write_atomic(path, cli::certificate_text(c));
  auto v = run({"verify", path});
  EXPECT_EQ(v.code, 1) << v.err;
  EXPECT_NE(v.err.find("mismatch"), std::string::npos);
}

TEST(RunCommand, OtherSubcommands)
{
  auto t = scratch("tower.json").string();
  ASSERT_EQ(run({"tower-lift", sample("tower.json"), "--base", sample("tower_base.json"), "--out", t}).code, 0);
  EXPECT_EQ(run({"verify", t}).code, 0);

  auto e = scratch("embed.json").string();
  ASSERT_EQ(run({"embed", sample("z6.json"), sample("beta.json"), sample("z6z7.json"), "--out", e}).code, 0);
  EXPECT_EQ(run({"verify", e}).code, 0);

  auto dir = scratch("catalog");
  auto r = run({"catalog", "--only", "z2-z3sq", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"verify", (dir / "z2-z3sq.lift.json").string()}).code, 0);
  EXPECT_EQ(run({"verify", (dir / "z2-z3sq.oracle.json").string()}).code, 0);
}

TEST(RunCommand, ExitCodes)
{
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"pop"}).code, 2);
  EXPECT_EQ(run({"pop", "--level", "0"}).code, 2);
  EXPECT_EQ(run({"check-frobenius", sample("missing.json")}).code, 2);
  EXPECT_EQ(run({"lift", sample("s4.json"), "--normal", sample("v4.json"), "--oracle-only", "--structural-only"}).code,
            2);
  EXPECT_EQ(run({"catalog", "--only", "no-such-entry"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  // <(1 3)> is a subgroup of S4 but not normal.
  auto a = scratch("not-normal.json").string();
  cli::write_atomic(a, R"j({"degree":4,"generators":["(1 3)"]})j");
  EXPECT_EQ(run({"lift", sample("s4.json"), "--normal", a}).code, 1);
}

TEST(RunCommand, Deterministic)
{
  auto a = run({"pop", "--level", "2"});
  auto b = run({"pop", "--level", "2"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto l1 = run({"lift", sample("s4.json"), "--normal", sample("v4.json")});
  auto l2 = run({"lift", sample("s4.json"), "--normal", sample("v4.json")});
  EXPECT_EQ(l1.out, l2.out);
}

TEST(RunCommand, CapsFromEnvironment)
{
  ::setenv("FORGE_CAPS", "10:2000:20000", 1);
  auto r = run({"lift", sample("s4.json"), "--normal", sample("v4.json")});
  ::unsetenv("FORGE_CAPS");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
  ::setenv("FORGE_CAPS", "x", 1);
  EXPECT_EQ(run({"pop", "--level", "1"}).code, 2);
  ::unsetenv("FORGE_CAPS");
}
