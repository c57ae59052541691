#include "hopf/assocbuild.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

namespace hopf {

cd GridSpec::node_z(int ix, int iy) const {
  const double fx = nx > 1 ? double(ix) / (nx - 1) : 0.5;
  const double fy = ny > 1 ? double(iy) / (ny - 1) : 0.5;
  return cd(x0 + fx * (x1 - x0), y0 + fy * (y1 - y0));
}

double GridSpec::node_t(int it) const { return 2 * std::numbers::pi * it / nt; }

double GridSpec::scale() const { return std::max(x1 - x0, y1 - y0); }

Vec8 directrix_point(const RuledPatch& patch, cd z) { return from_c4(patch.directrix.lift(z), patch.conv); }

double directrix_speed(const RuledPatch& patch, cd z) {
  const Vec4c c = patch.directrix.raw(z), dc = patch.directrix.raw_derivative(z);
  const Vec4c u = c.normalized();
  return (dc - u * u.dot(dc)).norm() / c.norm();
}

Vec8 gamma(const RuledPatch& patch, cd z, double t) {
  const Vec8 c = directrix_point(patch, z);
  const RulingDirection w = patch.ruling(z);
  // q carries i to w-hat, so the fibre of w through the base point projects to the same CP^3 point
  // as the directrix does for w = (1,0,0).
  const Eigen::Quaterniond q = ruling_rotor(w.w);
  const Vec8 base = patch.conv.side == MultSide::Right ? right_mul(c, q) : left_mul(q.conjugate(), c);
  return hopf_circle(base, w, t, patch.conv);
}

TangentFrame tangent_frame(const RuledPatch& patch, cd z, double t, double h) {
  const Vec8 x = gamma(patch, z, t);
  auto diff = [&](int axis, double step) -> Vec8 {
    if (axis == 2) return (gamma(patch, z, t + step) - gamma(patch, z, t - step)) / (2 * step);
    const cd dir = axis == 0 ? cd(1) : cd(0, 1);
    return (gamma(patch, z + step * dir, t) - gamma(patch, z - step * dir, t)) / (2 * step);
  };
  TangentFrame out;
  for (int a = 0; a < 3; ++a) {
    const Vec8 d = (4.0 * diff(a, h / 2) - diff(a, h)) / 3.0;
    out.vectors.col(a) = d - x.dot(d) * x;
  }
  Eigen::JacobiSVD<Tangent3> svd(out.vectors);
  out.max_sv = svd.singularValues()(0);
  out.min_sv = svd.singularValues()(2);
  return out;
}

double calibration_defect(const RuledPatch& patch, const SquashParams& params, cd z, double t, double h) {
  const TangentFrame tf = tangent_frame(patch, z, t, h);
  if (!(tf.min_sv >= ScanOptions{}.rank_factor * patch.grid.scale()))
    throw std::domain_error("degenerate node");
  const SasakianPoint pt = sasakian_frame(gamma(patch, z, t), patch.conv);
  return calibration_defect(pt, tf.vectors, params, patch.conv);
}

DefectAggregates aggregate(const std::vector<NodeRecord>& nodes) {
  DefectAggregates a;
  std::vector<double> defects;
  std::set<std::pair<int, int>> flagged_z;
  a.min_r = std::numeric_limits<double>::infinity();
  double sum = 0;
  for (const auto& n : nodes) {
    if (n.flags & kExcluded) {
      ++a.flagged;
      flagged_z.insert({n.ix, n.iy});
      continue;
    }
    ++a.evaluated;
    defects.push_back(n.defect);
    sum += n.defect;
    a.max_defect = std::max(a.max_defect, n.defect);
    if (!(n.flags & kNoProfile)) {
      a.max_s = std::max(a.max_s, n.s);
      a.min_r = std::min(a.min_r, n.r);
    }
  }
  if (!defects.empty()) {
    a.mean_defect = sum / defects.size();
    std::sort(defects.begin(), defects.end());
    const std::size_t m = defects.size() / 2;
    a.median_defect = defects.size() % 2 ? defects[m] : 0.5 * (defects[m - 1] + defects[m]);
  }
  if (a.min_r == std::numeric_limits<double>::infinity()) a.min_r = 0;
  a.flagged_z.assign(flagged_z.begin(), flagged_z.end());
  return a;
}

namespace {

NodeRecord evaluate_node(const RuledPatch& patch, const SquashParams* params, int ix, int iy, int it,
                         double rank_tol, const ScanOptions& opts) {
  NodeRecord n;
  n.ix = ix;
  n.iy = iy;
  n.it = it;
  const cd z = patch.grid.node_z(ix, iy);
  n.x = z.real();
  n.y = z.imag();
  n.t = patch.grid.node_t(it);
  if (directrix_speed(patch, z) < rank_tol) n.flags |= kFibreTangent;
  const TangentFrame tf = tangent_frame(patch, z, n.t, opts.h);
  n.minsv = tf.min_sv;
  if (!(tf.min_sv >= rank_tol)) {
    n.flags |= kDegenerate;
    return n;
  }
  if (!params) return n;
  const SasakianPoint pt = sasakian_frame(gamma(patch, z, n.t), patch.conv);
  const double value = normalized_phi_value(pt, tf.vectors, *params, patch.conv);
  n.defect = 1.0 - std::abs(value);
  Eigen::Matrix<double, 7, 3> flat = to_flat_model(pt, tf.vectors, *params);
  if (value < 0) flat.col(0) = -flat.col(0);
  try {
    const auto profile = jordan_profile<double>(flat, opts.assoc_tol);
    n.s = profile.s;
    n.r = profile.r;
  } catch (const NotAssociative&) {
    n.flags |= kNoProfile;
  }
  return n;
}

DefectReport run_scan(const RuledPatch& patch, const SquashParams* params, const ScanOptions& opts) {
  DefectReport report;
  report.label = patch.label;
  if (params) report.params = *params;
  report.grid = patch.grid;
  report.rank_tol = opts.rank_factor * patch.grid.scale();
  const GridSpec& g = patch.grid;
  report.nodes.reserve(std::size_t(g.nx) * g.ny * g.nt);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int it = 0; it < g.nt; ++it)
        report.nodes.push_back(evaluate_node(patch, params, ix, iy, it, report.rank_tol, opts));
  report.aggregates = aggregate(report.nodes);
  return report;
}

}  // namespace

DefectReport scan_patch(const RuledPatch& patch, const SquashParams& params, const ScanOptions& opts) {
  return run_scan(patch, &params, opts);
}

std::vector<NodeRecord> degeneracy_scan(const RuledPatch& patch, const ScanOptions& opts) {
  std::vector<NodeRecord> out;
  for (const auto& n : run_scan(patch, nullptr, opts).nodes)
    if (n.flags & kExcluded) out.push_back(n);
  return out;
}

std::vector<NodeRecord> striped_scan(const RuledPatch& patch, const SquashParams& params, const ScanOptions& opts) {
  std::vector<NodeRecord> out;
  for (const auto& n : run_scan(patch, &params, opts).nodes)
    if (!(n.flags & kDegenerate)) out.push_back(n);
  return out;
}

RuledPatch baseline_patch(const GridSpec& grid, const ConventionSet& conv) {
  return {veronese_directrix(), RulingMap::constant(Eigen::Vector3d(1, 0, 0)), grid, conv, "baseline"};
}

RuledPatch nontrivial_patch(const GridSpec& grid, const ConventionSet& conv) {
  return {veronese_directrix(), RulingMap::from_rational(Rational::polynomial({0, 1})), grid, conv, "nontrivial"};
}

RuledPatch negative_control_patch(const GridSpec& grid, const ConventionSet& conv) {
  return {veronese_directrix(), RulingMap::anti_holomorphic(Rational::polynomial({0, 1})), grid, conv,
          "negative-control"};
}

std::vector<SquashParams> standard_params() {
  return {SquashParams(1, 1), SquashParams(1 / std::sqrt(5.0), 1), SquashParams(0.7, 1.3)};
}

ConventionTrial evaluate_convention(const ConventionSet& conv) {
  ConventionTrial trial;
  trial.conv = conv;
  const auto params = standard_params();

  // Oracle (1): the canonical leaf P1 is calibrated with the orientation induced by the Reeb fields.
  const ParamMap3 leaf = catalog(CatalogName::P1, conv);
  const Eigen::Vector3d samples[] = {{0.4, 0.3, 1.1}, {0.9, 2.0, 4.5}, {1.2, 5.1, 0.7}};
  double leaf_defect = 0;
  for (const auto& u : samples) {
    const Vec8 x = leaf.map(u).normalized();
    const SasakianPoint pt = sasakian_frame(x, conv);
    Tangent3 T = tangent_by_differences(leaf.map, u);
    if ((pt.reeb.transpose() * T).determinant() < 0) T.col(0) = -T.col(0);
    for (const auto& p : params) {
      const auto g2 = metric_from_phi(phi_ab_at(pt, p, conv));
      const Eigen::VectorXd w = p.weights().weights;
      const Matrix7d expected = Eigen::VectorXd(w.cwiseProduct(w)).asDiagonal();
      if (!g2 || g2->orientation != 1 || (g2->metric - expected).cwiseAbs().maxCoeff() > 1e-8) {
        leaf_defect = std::numeric_limits<double>::infinity();
        continue;
      }
      leaf_defect = std::max(leaf_defect, std::abs(1.0 - normalized_phi_value(pt, T, p, conv)));
    }
  }
  trial.leaf_defect = leaf_defect;
  trial.leaf_ok = leaf_defect < 1e-8;

  // Oracle (2): the trivial baseline is calibrated on a small grid.
  GridSpec grid;
  grid.nx = grid.ny = 4;
  grid.nt = 3;
  const RuledPatch patch = baseline_patch(grid, conv);
  double baseline = 0;
  for (const auto& p : params) baseline = std::max(baseline, scan_patch(patch, p).aggregates.max_defect);
  trial.baseline_defect = baseline;
  trial.baseline_ok = baseline < 1e-6;
  return trial;
}

CalibrationResult convention_calibration() {
  CalibrationResult result;
  int passing = 0;
  for (const auto& conv : ConventionSet::all()) {
    result.trials.push_back(evaluate_convention(conv));
    if (result.trials.back().leaf_ok && result.trials.back().baseline_ok) {
      result.selected = conv;
      ++passing;
    }
  }
  if (passing != 1)
    throw std::runtime_error("convention calibration: " + std::to_string(passing) +
                             " combinations pass both oracles (expected exactly one)");
  return result;
}

void write_csv(const DefectReport& report, std::ostream& out) {
  out << "x,y,t,defect,s,r,minsv,flag\n";
  char line[256];
  for (const auto& n : report.nodes) {
    std::snprintf(line, sizeof line, "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%u\n", n.x, n.y, n.t, n.defect, n.s,
                  n.r, n.minsv, n.flags);
    out << line;
  }
}

void write_obj(const RuledPatch& patch, std::ostream& out) {
  const GridSpec& g = patch.grid;
  out << "# t-slices of " << patch.label << "\n";
  char line[160];
  long base = 1;
  for (int it = 0; it < g.nt; ++it) {
    out << "g slice_" << it << "\n";
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const Vec8 x = gamma(patch, g.node_z(ix, iy), g.node_t(it));
        const double d = 1.0 - x(7);
        std::snprintf(line, sizeof line, "v %.9f %.9f %.9f\n", x(0) / d, x(1) / d, x(2) / d);
        out << line;
      }
    for (int iy = 0; iy + 1 < g.ny; ++iy)
      for (int ix = 0; ix + 1 < g.nx; ++ix) {
        const long a = base + iy * g.nx + ix, b = a + 1, c = a + g.nx, d = c + 1;
        out << "f " << a << ' ' << b << ' ' << d << "\nf " << a << ' ' << d << ' ' << c << "\n";
      }
    base += long(g.nx) * g.ny;
  }
}

}  // namespace hopf
