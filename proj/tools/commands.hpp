#ifndef HOPF_TOOLS_COMMANDS_HPP_
#define HOPF_TOOLS_COMMANDS_HPP_

#include "config.hpp"

#include "json.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace hopf::cli {

using Json = nlohmann::ordered_json;

struct CommandContext {
  RunConfig cfg;
  std::string out_dir;
  bool recalibrate = false;
  std::ostream* log = nullptr;  // summary lines; stdout when null
};

// Loads the cached convention choice, calibrating and caching it when absent.
ConventionSet load_or_calibrate(const CommandContext& ctx);

Json tolerances_json(const Tolerances& t);

// Each command writes its report under ctx.out_dir and returns the process exit code:
// 0 when every bound holds, 1 otherwise.
int cmd_verify_g2(const CommandContext& ctx);
int cmd_build_assoc(const CommandContext& ctx);
int cmd_flag_check(const CommandContext& ctx);
int cmd_catalog(const CommandContext& ctx);

struct ClassifyResult {
  double s = 0, r = 0;
  double defect = 0;
  bool associative = false;
  bool striped = false;
};
// Throws std::invalid_argument on dependent input.
ClassifyResult classify_plane(const Plane7d& vectors, const Tolerances& tol);
// Vectors as three comma-separated lists of seven numbers.
int cmd_classify(const std::array<std::string, 3>& vectors, const Tolerances& tol, std::ostream& out);

// Groups of 4-adjacent flagged (ix, iy) nodes; the flagged set counts as isolated when every
// group fits in a 2x2 block.
bool flags_isolated(const std::vector<std::pair<int, int>>& flagged);

}  // namespace hopf::cli

#endif  // HOPF_TOOLS_COMMANDS_HPP_
