#ifndef HOPF_ASSOCBUILD_HPP_
#define HOPF_ASSOCBUILD_HPP_

#include "hopf/curves.hpp"
#include "hopf/g2core.hpp"
#include "hopf/sphere7.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hopf {

struct GridSpec {
  int nx = 20;
  int ny = 20;
  int nt = 8;
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;

  cd node_z(int ix, int iy) const;
  double node_t(int it) const;
  // Largest side of the chart rectangle.
  double scale() const;
};

struct RuledPatch {
  DirectrixCurve directrix;
  RulingMap ruling;
  GridSpec grid;
  ConventionSet conv;
  std::string label;
};

// Unit directrix lift as a point of S^7.
Vec8 directrix_point(const RuledPatch& patch, cd z);
// Speed of the directrix in CP^3: the part of c' orthogonal to c, over |c|.
double directrix_speed(const RuledPatch& patch, cd z);
// Point of the ruled 3-fold: the Hopf circle of w(z) through the adjusted directrix point.
Vec8 gamma(const RuledPatch& patch, cd z, double t);

struct TangentFrame {
  Tangent3 vectors;  // d/dx, d/dy, d/dt
  double min_sv = 0;
  double max_sv = 0;
};
TangentFrame tangent_frame(const RuledPatch& patch, cd z, double t, double h = 1e-3);

// Defect of the frame oriented to minimize it; throws std::domain_error at degenerate nodes.
double calibration_defect(const RuledPatch& patch, const SquashParams& params, cd z, double t, double h = 1e-3);

// kDegenerate: tangent frame below the rank tolerance. kFibreTangent: the directrix is stationary in
// CP^3 there, so the node lies over the fibre-tangent set. Both are excluded from aggregates.
enum NodeFlag : unsigned { kDegenerate = 1u, kNoProfile = 2u, kFibreTangent = 4u };
inline constexpr unsigned kExcluded = kDegenerate | kFibreTangent;

struct NodeRecord {
  int ix = 0, iy = 0, it = 0;
  double x = 0, y = 0, t = 0;
  double defect = 0;
  double s = 0, r = 0;
  double minsv = 0;
  unsigned flags = 0;
};

struct DefectAggregates {
  double max_defect = 0;
  double mean_defect = 0;
  double median_defect = 0;
  double max_s = 0;
  double min_r = 0;
  int evaluated = 0;
  int flagged = 0;
  std::vector<std::pair<int, int>> flagged_z;  // distinct (ix, iy) with any excluded node
};

struct ScanOptions {
  double h = 1e-3;
  double rank_factor = 1e-4;
  double assoc_tol = 1e-6;
};

struct DefectReport {
  std::string label;
  SquashParams params;
  GridSpec grid;
  double rank_tol = 0;
  std::vector<NodeRecord> nodes;
  DefectAggregates aggregates;
};

// Aggregates over non-degenerate nodes, recomputed from node data.
DefectAggregates aggregate(const std::vector<NodeRecord>& nodes);

DefectReport scan_patch(const RuledPatch& patch, const SquashParams& params, const ScanOptions& opts = {});
// Nodes whose tangent frame has rank below the tolerance or that lie over the fibre-tangent set.
std::vector<NodeRecord> degeneracy_scan(const RuledPatch& patch, const ScanOptions& opts = {});
// (s, r) at each node of full rank, including fibre-tangent ones.
std::vector<NodeRecord> striped_scan(const RuledPatch& patch, const SquashParams& params, const ScanOptions& opts = {});

// Standard patches on the Veronese directrix.
RuledPatch baseline_patch(const GridSpec& grid = {}, const ConventionSet& conv = {});
RuledPatch nontrivial_patch(const GridSpec& grid = {}, const ConventionSet& conv = {});
RuledPatch negative_control_patch(const GridSpec& grid = {}, const ConventionSet& conv = {});

// The (a, b) pairs used throughout the acceptance checks.
std::vector<SquashParams> standard_params();

struct ConventionTrial {
  ConventionSet conv;
  double leaf_defect = 0;      // oracle (1)
  double baseline_defect = 0;  // oracle (2)
  bool leaf_ok = false;
  bool baseline_ok = false;
};

struct CalibrationResult {
  ConventionSet selected;
  std::vector<ConventionTrial> trials;
};

// Tests every convention combination against both oracles; throws std::runtime_error unless
// exactly one passes.
CalibrationResult convention_calibration();
ConventionTrial evaluate_convention(const ConventionSet& conv);

void write_csv(const DefectReport& report, std::ostream& out);
// Triangulated t-slices, stereographically projected from the last coordinate axis.
void write_obj(const RuledPatch& patch, std::ostream& out);

}  // namespace hopf

#endif  // HOPF_ASSOCBUILD_HPP_
