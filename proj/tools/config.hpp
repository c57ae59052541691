#ifndef HOPF_TOOLS_CONFIG_HPP_
#define HOPF_TOOLS_CONFIG_HPP_

#include "hopf/assocbuild.hpp"
#include "hopf/flag.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopf::cli {

struct Tolerances {
  double coclosed = 1e-6;
  double torsion_rel = 1e-4;
  double nearly_parallel = 1e-5;
  double torsion_fit = 1e-5;
  double defect = 1e-6;
  double leaf = 1e-8;
  double striped_s = 1e-6;
  double striped_r = 1e-3;
  double negative_median = 1e-2;
  double su3 = 1e-6;
  double cubic = 1e-10;
  double a_zero = 1e-8;
  double unitary = 1e-10;
};

struct RulingRecipe {
  std::string kind = "holomorphic";  // constant | holomorphic | anti-holomorphic
  Eigen::Vector3d w{1, 0, 0};
  std::vector<cd> num{cd(0), cd(1)};
  std::vector<cd> den{cd(1)};
};

struct DirectrixRecipe {
  std::vector<cd> f_num{cd(0), cd(0), cd(0), cd(2)};
  std::vector<cd> f_den{cd(1)};
  std::vector<cd> g_num{cd(0), cd(1)};
  std::vector<cd> g_den{cd(1)};
};

struct RunConfig {
  std::uint64_t seed = 20240611;
  std::vector<SquashParams> ab = standard_params();
  GridSpec grid;
  std::string out;
  std::string conventions_path;
  int points = 20;
  double h = 1e-3;
  Tolerances tol;

  std::string recipe = "nontrivial";  // baseline | nontrivial | negative | custom
  std::string label;
  DirectrixRecipe directrix;
  RulingRecipe ruling;
  bool mesh = false;

  int families = 20;
  int samples = 200;
  int random_curves = 2;
  std::vector<PlaneCurve> curves;

  bool inject_fault = false;
};

// "x", "p/q", or "re:im" with each part a decimal or a fraction.
cd parse_coefficient(const std::string& token);
std::vector<cd> parse_coefficients(const std::string& list);
std::vector<SquashParams> parse_ab(const std::string& list);
void parse_grid(const std::string& text, GridSpec& grid);

// Applies one key = value setting; throws std::invalid_argument on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// Plain-text config: one key = value per line, '#' starts a comment.
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

// Output directory precedence: explicit flag, then HOPFASSOC_OUT, then config, then "hopfassoc_out".
std::string resolve_output_dir(const RunConfig& cfg, const std::optional<std::string>& flag);

RuledPatch make_patch(const RunConfig& cfg, const ConventionSet& conv);

}  // namespace hopf::cli

#endif  // HOPF_TOOLS_CONFIG_HPP_
