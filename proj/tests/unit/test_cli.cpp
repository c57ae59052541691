#include "doctest.h"
#include "commands.hpp"
#include "config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace hopf;
using namespace hopf::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hopfassoc_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const Eigen::Matrix<double, 7, 1>& v) {
  std::ostringstream s;
  s.precision(17);
  for (int i = 0; i < 7; ++i) s << (i ? "," : "") << v(i);
  return s.str();
}

CommandContext small_build(const fs::path& out, std::ostream& log) {
  CommandContext ctx;
  ctx.cfg.grid.nx = ctx.cfg.grid.ny = 4;
  ctx.cfg.grid.nt = 3;
  ctx.cfg.recipe = "nontrivial";
  ctx.out_dir = out.string();
  ctx.log = &log;
  return ctx;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("coefficient, (a, b) and grid tokens") {
    CHECK(parse_coefficient("2") == cd(2));
    CHECK(parse_coefficient("-1/4") == cd(-0.25));
    CHECK(parse_coefficient("1:-2") == cd(1, -2));
    CHECK(parse_coefficient("1/2:3/4") == cd(0.5, 0.75));
    CHECK_THROWS_AS(parse_coefficient("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coefficient("1/0"), std::invalid_argument);
    const auto list = parse_coefficients("0, 1, 0:1");
    REQUIRE(list.size() == 3);
    CHECK(list[2] == cd(0, 1));

    const auto ab = parse_ab("1:1,0.7:1.3");
    REQUIRE(ab.size() == 2);
    CHECK(ab[1].a == 0.7);
    CHECK(ab[1].b == 1.3);
    CHECK_THROWS_AS(parse_ab("1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ab("0:1"), std::invalid_argument);

    GridSpec g;
    parse_grid("5,6,7", g);
    CHECK(g.nx == 5);
    CHECK(g.ny == 6);
    CHECK(g.nt == 7);
    CHECK_THROWS_AS(parse_grid("5,6", g), std::invalid_argument);
  }

  TEST_CASE("settings and validation") {
    RunConfig cfg;
    apply_setting(cfg, "tol.defect", "1e-7");
    CHECK(cfg.tol.defect == 1e-7);
    apply_setting(cfg, "seed", "42");
    CHECK(cfg.seed == 42u);
    apply_setting(cfg, "ruling", "constant");
    apply_setting(cfg, "ruling.w", "0,1,0");
    CHECK(cfg.ruling.kind == "constant");
    CHECK(cfg.ruling.w == Eigen::Vector3d(0, 1, 0));
    CHECK_THROWS_AS(apply_setting(cfg, "no.such.key", "1"), std::invalid_argument);
    CHECK_NOTHROW(validate(cfg));
    apply_setting(cfg, "tol.cubic", "0");
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  }

  TEST_CASE("config files report the failing line") {
    const fs::path dir = scratch_dir("config");
    const fs::path good = dir / "good.cfg";
    std::ofstream(good) << "# comment\nseed = 7\nab = 1:1\ngrid = 3,3,2   # trailing\nrecipe = baseline\n";
    const RunConfig cfg = load_config(good.string());
    CHECK(cfg.seed == 7u);
    CHECK(cfg.ab.size() == 1);
    CHECK(cfg.grid.nt == 2);
    CHECK(cfg.recipe == "baseline");

    const fs::path bad = dir / "bad.cfg";
    std::ofstream(bad) << "seed = 7\nbogus = 1\n";
    CHECK_THROWS_WITH_AS(load_config(bad.string()), doctest::Contains("bad.cfg:2"), std::invalid_argument);
    const fs::path malformed = dir / "malformed.cfg";
    std::ofstream(malformed) << "seed 7\n";
    CHECK_THROWS_WITH_AS(load_config(malformed.string()), doctest::Contains("malformed.cfg:1"), std::invalid_argument);
    CHECK_THROWS(load_config((dir / "missing.cfg").string()));
  }

  TEST_CASE("output directory precedence") {
    RunConfig cfg;
    ::unsetenv("HOPFASSOC_OUT");
    CHECK(resolve_output_dir(cfg, std::nullopt) == "hopfassoc_out");
    cfg.out = "from_config";
    CHECK(resolve_output_dir(cfg, std::nullopt) == "from_config");
    ::setenv("HOPFASSOC_OUT", "from_env", 1);
    CHECK(resolve_output_dir(cfg, std::nullopt) == "from_env");
    CHECK(resolve_output_dir(cfg, std::string("from_flag")) == "from_flag");
    ::unsetenv("HOPFASSOC_OUT");
  }

  TEST_CASE("classify examples") {
    const Tolerances tol;
    Plane7d E = Plane7d::Zero();
    E(0, 0) = E(1, 1) = E(2, 2) = 1;
    const auto a = classify_plane(E, tol);
    CHECK(a.associative);
    CHECK(a.s == doctest::Approx(0.0));
    CHECK(a.r == doctest::Approx(0.0));
    CHECK_FALSE(a.striped);

    const auto p = classify_plane(build_normal_form<double>({0, std::numbers::pi / 4}), tol);
    CHECK(p.associative);
    CHECK(p.s < 1e-9);
    CHECK(p.r == doctest::Approx(std::numbers::pi / 4));
    CHECK(p.striped);

    Plane7d F = Plane7d::Zero();
    F(0, 0) = F(1, 1) = F(3, 2) = 1;
    const auto n = classify_plane(F, tol);
    CHECK_FALSE(n.associative);
    CHECK(n.defect == doctest::Approx(1.0));

    Plane7d dep = E;
    dep.col(2) = dep.col(0) + dep.col(1);
    CHECK_THROWS_AS(classify_plane(dep, tol), std::invalid_argument);
  }

  TEST_CASE("classify command output and exit codes") {
    const Tolerances tol;
    const Plane7d P = build_normal_form<double>({0, std::numbers::pi / 4});
    std::ostringstream out;
    CHECK(cmd_classify({join(P.col(0)), join(P.col(1)), join(P.col(2))}, tol, out) == 0);
    CHECK(out.str().find("striped") != std::string::npos);
    std::ostringstream err;
    CHECK(cmd_classify({"1,0,0,0,0,0,0", "2,0,0,0,0,0,0", "0,0,1,0,0,0,0"}, tol, err) == 2);
    std::ostringstream bad;
    CHECK(cmd_classify({"1,0,0", "0,1,0", "0,0,1"}, tol, bad) == 2);
  }

  TEST_CASE("isolated flag sets") {
    CHECK(flags_isolated({}));
    CHECK(flags_isolated({{3, 3}}));
    CHECK(flags_isolated({{3, 3}, {3, 4}, {4, 3}, {4, 4}, {9, 9}}));
    CHECK(flags_isolated({{1, 1}, {2, 2}}));  // diagonal neighbours are separate groups
    CHECK_FALSE(flags_isolated({{1, 1}, {2, 1}, {3, 1}}));
  }

  TEST_CASE("build-assoc is deterministic and writes a versioned report") {
    const fs::path d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
    std::ostringstream log;
    CHECK(cmd_build_assoc(small_build(d1, log)) == 0);
    // the second run reuses a copied convention cache
    fs::copy_file(d1 / "conventions.json", d2 / "conventions.json");
    CHECK(cmd_build_assoc(small_build(d2, log)) == 0);
    const auto csv1 = files_with_extension(d1, ".csv"), csv2 = files_with_extension(d2, ".csv");
    REQUIRE(csv1.size() == standard_params().size());
    REQUIRE(csv1.size() == csv2.size());
    for (std::size_t k = 0; k < csv1.size(); ++k) {
      CHECK(csv1[k].filename() == csv2[k].filename());
      CHECK(slurp(csv1[k]) == slurp(csv2[k]));
      CHECK(slurp(csv1[k]).rfind("x,y,t,defect,s,r,minsv,flag\n", 0) == 0);
    }
    const auto reports = files_with_extension(d1, ".json");
    bool found = false;
    for (const auto& r : reports) {
      if (r.filename().string().rfind("build_assoc_", 0) != 0) continue;
      found = true;
      const Json j = Json::parse(slurp(r));
      CHECK(j.at("schema") == 1);
      CHECK(j.at("command") == "build-assoc");
      CHECK(j.at("tolerances").at("defect") == 1e-6);
      CHECK(j.at("conventions") == ConventionSet{}.str());
    }
    CHECK(found);
    const Json conv = Json::parse(slurp(d1 / "conventions.json"));
    CHECK(conv.at("selected") == ConventionSet{}.str());
    CHECK(conv.at("trials").size() == 16);
  }

  TEST_CASE("build-assoc exit code follows the negative control") {
    const fs::path d = scratch_dir("negative");
    std::ostringstream log;
    CommandContext ctx = small_build(d, log);
    ctx.cfg.recipe = "negative";
    ctx.cfg.grid.nx = ctx.cfg.grid.ny = 5;
    CHECK(cmd_build_assoc(ctx) == 1);
    ctx.cfg.recipe = "baseline";
    CHECK(cmd_build_assoc(ctx) == 0);
    ctx.cfg.recipe = "unknown";
    CHECK_THROWS(cmd_build_assoc(ctx));
  }
}
