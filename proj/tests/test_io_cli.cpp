#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "nslattice/cli.hpp"

using namespace nslattice;
using io::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  auto p = std::filesystem::temp_directory_path() / ("nslattice_test_" + name);
  std::ofstream(p) << contents;
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(JsonIo, IntegersRoundTripAtAnySize) {
  for (const char* s : {"0", "-1", "9223372036854775807", "-9223372036854775808", "9223372036854775808",
                        "-123456789012345678901234567890"}) {
    Integer z(s);
    json j = io::integer_to_json(z);
    EXPECT_EQ(j.is_string(), !fits_int64(z)) << s;
    EXPECT_EQ(io::integer_from_json(json::parse(j.dump()), "x"), z);
  }
  EXPECT_THROW(io::integer_from_json(json("12a"), "x"), ValidationError);
  EXPECT_THROW(io::integer_from_json(json(1.5), "x"), ValidationError);
}

TEST(JsonIo, StructuresRoundTrip) {
  BlowupLattice lat(4, 3, -5, 2);
  EXPECT_EQ(io::lattice_from_json(io::to_json(lat)).kappa, -5);
  EXPECT_EQ(io::lattice_from_json(io::to_json(lat)).l, 2);

  NSClass u(std::vector<Integer>{Integer("100000000000000000000"), -3, 0});
  EXPECT_EQ(io::class_from_json(json::parse(io::to_json(u).dump())), u);

  auto f = w_d_polynomial(BlowupLattice(3, 2, -4, 2), 2);
  EXPECT_EQ(io::form_from_json(json::parse(io::to_json(f).dump())), f);

  auto m = IntegerMatrix::from_rows({{3, 2, 2}, {2, 1, 2}, {2, 2, 1}});
  EXPECT_EQ(io::matrix_from_json(json::parse(io::to_json(m).dump())), m);

  auto s = MonomialMap::standard_cremona(4);
  EXPECT_EQ(io::map_from_json(json::parse(io::to_json(s).dump())), s);

  IntPoly p{1, -5, -5, 1};
  EXPECT_EQ(io::poly_from_json(io::to_json(p)), p);
}

TEST(JsonIo, FieldErrorsNamePath) {
  try {
    io::lattice_from_json(json::parse(R"({"k": "three", "a": 1, "kappa": -4, "l": 2})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "lattice.k: expected integer");
  }
  try {
    io::map_from_json(json::parse(R"({"k": 2, "comps": [[0,1,1],[1,0,"x"],[1,1,0]]})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("map.comps[1][2]"), std::string::npos) << e.what();
  }
}

TEST(JsonIo, MalformedDocumentReportsLineAndColumn) {
  try {
    io::parse_document("{\"k\": 2,\n \"comps\": [1,\n", "in.json");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("in.json:3:", 0), 0u) << e.what();
    EXPECT_NE(std::string(e.what()).find("malformed JSON"), std::string::npos);
  }
}

TEST(Cli, FermatText) {
  auto r = run_cli({"lattice", "wd", "--k", "3", "--a", "1", "--l", "2", "--d", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "X0^3+X1^3+X2^3, smooth: true\n");
  auto q = run_cli({"lattice", "wd", "--k", "4", "--l", "1"});
  EXPECT_EQ(q.out, "X0^4-X1^4, smooth: true\n");
}

TEST(Cli, WdJsonFields) {
  auto r = run_cli({"lattice", "wd", "--k", "3", "--l", "2", "--d", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["polynomial"], "-4*X0^2+2*X1^2+2*X2^2");
  EXPECT_EQ(j["smooth"], true);
  EXPECT_EQ(j["finiteness"], "theorem inapplicable");
  auto c = json::parse(run_cli({"lattice", "wd", "--k", "3", "--l", "2", "--format", "json"}).out);
  EXPECT_NE(c["finiteness"].get<std::string>().find("finite"), std::string::npos);
}

TEST(Cli, LatticeEval) {
  auto r = run_cli({"lattice", "eval", "--k", "3", "--l", "2", "--classes", "[[1,0,0],[1,0,0]]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Q_2([1,0,0], [1,0,0]) = -4\n");
  const std::string x = R"(["10000000000000",0])";
  auto big = run_cli({"lattice", "eval", "--k", "3", "--l", "1", "--classes", "[" + x + "," + x + "," + x + "]",
                      "--format", "json"});
  ASSERT_EQ(big.code, 0) << big.err;
  EXPECT_EQ(json::parse(big.out)["value"], "1000000000000000000000000000000000000000");
}

TEST(Cli, IsometryEnumeration) {
  auto r = run_cli({"isometry", "enum", "--k", "3", "--l", "2", "--bound", "1", "--fix-canonical", "false",
                    "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["count"], 6);
  EXPECT_EQ(j["canonical_fixing_count"], 2);
  EXPECT_EQ(j["finite_order_count"], 6);
  EXPECT_EQ(j["closure"]["closed"], true);
  EXPECT_EQ(j["closure"]["size"], 6);
  auto fixed = run_cli({"isometry", "enum", "--k", "3", "--l", "2"});
  EXPECT_EQ(fixed.code, 0);
  EXPECT_NE(fixed.out.find("2 isometries"), std::string::npos) << fixed.out;
  EXPECT_NE(fixed.out.find("closed, order 2"), std::string::npos) << fixed.out;
}

TEST(Cli, BudgetExitCode) {
  auto r = run_cli({"isometry", "enum", "--k", "3", "--l", "3", "--bound", "2", "--node-budget", "10"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("node budget"), std::string::npos);

  ::setenv("NSLATTICE_NODE_BUDGET", "5", 1);
  auto env = run_cli({"isometry", "enum", "--k", "3", "--l", "3", "--bound", "2"});
  ::unsetenv("NSLATTICE_NODE_BUDGET");
  EXPECT_EQ(env.code, 3);
}

TEST(Cli, CremonaSigma3) {
  auto r = run_cli({"cremona", "analyze", "--map", "sigma3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["deg"], 3);
  EXPECT_EQ(j["deg_inv"], 3);
  EXPECT_EQ(j["indDim"], 1);
  EXPECT_EQ(j["indDimInv"], 1);
  EXPECT_EQ(j["theorem"], "hypothesis fails");
  for (const auto& e : j["degree_identity"]) EXPECT_EQ(e["holds"], false);
  EXPECT_EQ(j["degree_sequence"], json::parse("[3,1,3,1,3,1]"));
}

TEST(Cli, CremonaFromInput) {
  auto p = temp_file("map.json", R"({"map": {"k": 2, "comps": [[0,1,1],[1,0,1],[1,1,0]]}})");
  auto r = run_cli({"cremona", "analyze", "--input", p.string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["deg"], 2);
  auto both = run_cli({"cremona", "analyze", "--input", p.string(), "--map", "sigma3"});
  EXPECT_EQ(both.code, 2);
  std::filesystem::remove(p);

  auto nb = temp_file("nb.json", R"({"k": 2, "comps": [[2,0,0],[1,1,0],[0,0,2]]})");
  auto bad = run_cli({"cremona", "analyze", "--input", nb.string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("not birational"), std::string::npos) << bad.err;
  std::filesystem::remove(nb);
}

TEST(Cli, CremonaAllCoversCorpus) {
  auto r = run_cli({"cremona", "analyze", "--map", "all", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.size(), Corpus::builtin().maps().size());
  for (const auto& [name, a] : j.items()) EXPECT_EQ(a["consistent"], true) << name;
}

TEST(Cli, SpectralRadius) {
  auto r = run_cli({"spectral", "radius", "--matrix", "lorentz3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["char_poly"], json::parse("[1,-5,-5,1]"));
  EXPECT_EQ(j["finite_order"], false);
  EXPECT_LT(j["radius_interval"][0].get<double>(), 5.8284271248);
  EXPECT_GT(j["radius_interval"][1].get<double>(), 5.8284271247);
  auto d = run_cli({"spectral", "radius", "--matrix", "lorentz3", "--tol", "1e-3", "--format", "json"});
  EXPECT_EQ(json::parse(d.out)["tol"], "1/1000");
  EXPECT_EQ(run_cli({"spectral", "radius", "--matrix", "lorentz3", "--tol", "0"}).code, 2);
  EXPECT_EQ(run_cli({"spectral", "radius", "--matrix", "lorentz3", "--tol", "abc"}).code, 2);
  EXPECT_EQ(run_cli({"spectral", "radius", "--matrix", "nope"}).code, 2);
}

TEST(Cli, CorollaryText) {
  auto r = run_cli({"corollary", "check", "--k", "7", "--r", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "k>2r+2 holds: Aut has finitely many components; centers must reach dimension ≥ 2.5→3 to evade\n");
}

TEST(Cli, OutputFileAndDeterminism) {
  auto path = std::filesystem::temp_directory_path() / "nslattice_test_out.json";
  std::vector<std::string> args{"cremona", "analyze", "--map", "all", "--format", "json", "--out", path.string()};
  ASSERT_EQ(run_cli(args).code, 0);
  std::string first = slurp(path);
  ASSERT_EQ(run_cli(args).code, 0);
  EXPECT_EQ(slurp(path), first);
  EXPECT_FALSE(first.empty());
  std::filesystem::remove(path);

  auto a = run_cli({"isometry", "enum", "--k", "2", "--l", "2", "--bound", "2", "--fix-canonical", "false",
                    "--format", "json"});
  auto b = run_cli({"isometry", "enum", "--k", "2", "--l", "2", "--bound", "2", "--fix-canonical", "false",
                    "--format", "json"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ValidationExitCodes) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"lattice", "wd", "--k", "1"}).code, 2);
  EXPECT_EQ(run_cli({"lattice", "wd", "--k", "3", "--d", "9"}).code, 2);
  EXPECT_EQ(run_cli({"lattice", "wd", "--k", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"lattice", "eval", "--k", "3", "--classes", "[[1,0]]", "--l", "2"}).code, 2);
  EXPECT_EQ(run_cli({"lattice", "wd", "--input", "/nonexistent/file.json"}).code, 2);

  auto bad = temp_file("bad.json", R"({"k": "three", "a": 1, "kappa": -4, "l": 2})");
  auto r = run_cli({"lattice", "wd", "--input", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lattice.k: expected integer"), std::string::npos) << r.err;
  std::filesystem::remove(bad);

  auto mal = temp_file("mal.json", "{\"k\": 2,\n \"comps\": [[0,1,1], [1,0,1],\n  [1,1,0]\n");
  auto m = run_cli({"cremona", "analyze", "--input", mal.string()});
  EXPECT_EQ(m.code, 2);
  EXPECT_NE(m.err.find(mal.string() + ":4:"), std::string::npos) << m.err;
  std::filesystem::remove(mal);
}

TEST(Cli, Help) {
  auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cremona"), std::string::npos);
}
