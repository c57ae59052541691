#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  using namespace hopf::cli;
  CLI::App app{"Associative 3-folds in the squashed 7-sphere: verification and construction"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> grid, ab;
  bool recalibrate = false, inject = false, mesh = false;
  std::optional<std::string> recipe;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "plain-text key = value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed for random sampling");
    sub->add_option("--grid", grid, "grid sizes NX,NY,NT");
    sub->add_option("--ab", ab, "squashing parameters a:b[,a:b...]");
    sub->add_flag("--recalibrate", recalibrate, "rerun convention calibration and overwrite the cache");
  };

  auto* verify = app.add_subcommand("verify-g2", "co-closedness and torsion identities on random points");
  add_common(verify);
  verify->add_flag("--inject-fault", inject, "corrupt a sign to exercise failure reporting");

  auto* build = app.add_subcommand("build-assoc", "ruled 3-fold construction and calibration-defect scan");
  add_common(build);
  build->add_option("--recipe", recipe, "baseline | nontrivial | negative | custom");
  build->add_flag("--mesh", mesh, "also write an OBJ mesh of t-slices");

  auto* flag = app.add_subcommand("flag-check", "SU(3) structure equations and Frenet-lift cubic form");
  add_common(flag);
  flag->add_flag("--inject-fault", inject, "corrupt the Maurer-Cartan layout");

  auto* cat = app.add_subcommand("catalog", "calibration and CR/Legendrian tables for A1, P1, P2");
  add_common(cat);

  std::array<std::string, 3> vectors;
  double assoc_tol = 1e-8;
  auto* classify = app.add_subcommand("classify", "Jordan profile of the span of three vectors in R^7");
  classify->add_option("u", vectors[0], "first vector, 7 comma-separated numbers")->required();
  classify->add_option("v", vectors[1], "second vector")->required();
  classify->add_option("w", vectors[2], "third vector")->required();
  classify->add_option("--tol", assoc_tol, "associativity tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify) {
      Tolerances tol;
      tol.leaf = assoc_tol;
      return cmd_classify(vectors, tol, std::cout);
    }
    CommandContext ctx;
    if (!config_path.empty()) ctx.cfg = load_config(config_path);
    if (seed) ctx.cfg.seed = *seed;
    if (grid) parse_grid(*grid, ctx.cfg.grid);
    if (ab) ctx.cfg.ab = parse_ab(*ab);
    if (recipe) ctx.cfg.recipe = *recipe;
    if (mesh) ctx.cfg.mesh = true;
    if (inject) ctx.cfg.inject_fault = true;
    validate(ctx.cfg);
    ctx.out_dir = resolve_output_dir(ctx.cfg, out_dir);
    ctx.recalibrate = recalibrate;
    if (*verify) return cmd_verify_g2(ctx);
    if (*build) return cmd_build_assoc(ctx);
    if (*flag) return cmd_flag_check(ctx);
    if (*cat) return cmd_catalog(ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
