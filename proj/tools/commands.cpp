#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace hopf::cli {

namespace fs = std::filesystem;

namespace {

std::ostream& log_stream(const CommandContext& ctx) { return ctx.log ? *ctx.log : std::cout; }

void write_json(const fs::path& path, const Json& j) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

Json header(const std::string& command, const CommandContext& ctx, const ConventionSet* conv) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["seed"] = ctx.cfg.seed;
  if (conv) j["conventions"] = conv->str();
  j["tolerances"] = tolerances_json(ctx.cfg.tol);
  return j;
}

std::string ab_tag(const SquashParams& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "a%.6g_b%.6g", p.a, p.b);
  return buf;
}

Vec8 random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec8 x;
  for (int i = 0; i < 8; ++i) x(i) = n(rng);
  return x.normalized();
}

bool within_rel(double value, double expected, double rel, double abs_floor) {
  return std::abs(value - expected) <= std::max(rel * std::abs(expected), abs_floor);
}

bool is_nearly_parallel_row(const SquashParams& p) { return std::abs(p.b * p.b - 5 * p.a * p.a) < 1e-9 * p.b * p.b; }

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

Json tolerances_json(const Tolerances& t) {
  return Json{{"coclosed", t.coclosed},
              {"torsion_rel", t.torsion_rel},
              {"nearly_parallel", t.nearly_parallel},
              {"torsion_fit", t.torsion_fit},
              {"defect", t.defect},
              {"leaf", t.leaf},
              {"striped_s", t.striped_s},
              {"striped_r", t.striped_r},
              {"negative_median", t.negative_median},
              {"su3", t.su3},
              {"cubic", t.cubic},
              {"a_zero", t.a_zero},
              {"unitary", t.unitary}};
}

ConventionSet load_or_calibrate(const CommandContext& ctx) {
  const fs::path path =
      ctx.cfg.conventions_path.empty() ? fs::path(ctx.out_dir) / "conventions.json" : fs::path(ctx.cfg.conventions_path);
  if (!ctx.recalibrate && fs::exists(path)) {
    std::ifstream in(path);
    const Json j = Json::parse(in);
    return ConventionSet::parse(j.at("selected").get<std::string>());
  }
  const CalibrationResult result = convention_calibration();
  Json j;
  j["schema"] = 1;
  j["selected"] = result.selected.str();
  Json trials = Json::array();
  for (const auto& t : result.trials)
    trials.push_back(Json{{"conventions", t.conv.str()},
                          {"leaf_defect", t.leaf_defect},
                          {"baseline_defect", t.baseline_defect},
                          {"leaf_ok", t.leaf_ok},
                          {"baseline_ok", t.baseline_ok}});
  j["trials"] = trials;
  write_json(path, j);
  return result.selected;
}

int cmd_verify_g2(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Tolerances& tol = cfg.tol;
  ConventionSet conv = load_or_calibrate(ctx);
  Json report = header("verify-g2", ctx, &conv);
  // Fault injection: a non-coclosed perturbation and a flipped phi sign in the torsion fit.
  const double epsilon = cfg.inject_fault ? 0.05 : 0.0;
  ConventionSet torsion_conv = conv;
  if (cfg.inject_fault) torsion_conv.phi_sign = -conv.phi_sign;
  report["inject_fault"] = cfg.inject_fault;

  std::mt19937_64 rng(cfg.seed);
  std::vector<Vec8> points;
  for (int k = 0; k < cfg.points; ++k) points.push_back(random_sphere_point(rng));

  struct Row {
    double coclosed;
    TorsionFit fit;
  };
  bool ok = true;
  Json rows = Json::array();
  Json failures = Json::array();
  double worst_coclosed = 0, worst_torsion = 0;
  for (const auto& p : cfg.ab) {
    std::vector<std::future<Row>> jobs;
    for (const auto& x : points)
      jobs.push_back(std::async(std::launch::async, [&, x] {
        return Row{coclosed_residual(p, x, cfg.h, conv, epsilon), torsion_check(p, x, cfg.h, torsion_conv)};
      }));
    double max_coclosed = 0, max_psi_err = 0, max_g1_err = 0, max_fit = 0;
    double mean_psi = 0, mean_g1 = 0;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const Row row = jobs[k].get();
      const TorsionFit& f = row.fit;
      const double psi_err = std::abs(f.coeff_psi - f.expected_psi) / std::abs(f.expected_psi);
      const double g1_err = std::abs(f.coeff_gamma1 - f.expected_gamma1) / std::max(std::abs(f.expected_gamma1), 1.0);
      max_coclosed = std::max(max_coclosed, row.coclosed);
      max_psi_err = std::max(max_psi_err, psi_err);
      max_g1_err = std::max(max_g1_err, g1_err);
      max_fit = std::max(max_fit, f.residual);
      mean_psi += f.coeff_psi / jobs.size();
      mean_g1 += f.coeff_gamma1 / jobs.size();
      const bool row_ok = row.coclosed < tol.coclosed &&
                          within_rel(f.coeff_psi, f.expected_psi, tol.torsion_rel, 0) &&
                          within_rel(f.coeff_gamma1, f.expected_gamma1, tol.torsion_rel, tol.nearly_parallel) &&
                          f.residual < tol.torsion_fit;
      if (!row_ok) {
        ok = false;
        failures.push_back(Json{{"a", p.a},
                                {"b", p.b},
                                {"point", k},
                                {"coclosed_residual", row.coclosed},
                                {"coeff_psi", f.coeff_psi},
                                {"expected_psi", f.expected_psi},
                                {"coeff_gamma1", f.coeff_gamma1},
                                {"expected_gamma1", f.expected_gamma1},
                                {"fit_residual", f.residual}});
      }
    }
    worst_coclosed = std::max(worst_coclosed, max_coclosed);
    worst_torsion = std::max({worst_torsion, max_psi_err, max_g1_err});
    Json row{{"a", p.a},
             {"b", p.b},
             {"max_coclosed_residual", max_coclosed},
             {"mean_coeff_psi", mean_psi},
             {"expected_coeff_psi", expected_torsion_psi(p)},
             {"mean_coeff_gamma1", mean_g1},
             {"expected_coeff_gamma1", expected_torsion_gamma1(p)},
             {"max_rel_error_psi", max_psi_err},
             {"max_error_gamma1", max_g1_err},
             {"max_fit_residual", max_fit}};
    if (is_nearly_parallel_row(p)) {
      const bool np_ok = std::abs(mean_g1) < tol.nearly_parallel &&
                         within_rel(mean_psi, expected_torsion_psi(p), tol.torsion_rel, 0);
      row["nearly_parallel"] = Json{{"lambda", mean_psi}, {"expected_lambda", expected_torsion_psi(p)}, {"ok", np_ok}};
      ok = ok && np_ok;
    }
    rows.push_back(row);
  }
  report["rows"] = rows;
  report["failures"] = failures;

  // Sign of the Gamma_1 coefficient along b at a = 1; it must change exactly once, across b^2 = 5.
  const Vec8 x0 = points.empty() ? random_sphere_point(rng) : points.front();
  Json scan = Json::array();
  std::vector<std::pair<double, double>> samples;
  for (int k = 0; k <= 12; ++k) {
    const double b = 1.5 + 0.125 * k;
    const TorsionFit f = torsion_check(SquashParams(1, b), x0, cfg.h, torsion_conv);
    samples.emplace_back(b, f.coeff_gamma1);
    scan.push_back(Json{{"b", b}, {"coeff_gamma1", f.coeff_gamma1}, {"expected", f.expected_gamma1}});
  }
  int changes = 0;
  double lo = 0, hi = 0;
  for (std::size_t k = 1; k < samples.size(); ++k)
    if ((samples[k - 1].second < 0) != (samples[k].second < 0)) {
      ++changes;
      lo = samples[k - 1].first;
      hi = samples[k].first;
    }
  const double root = std::sqrt(5.0);
  const bool sign_ok = changes == 1 && lo < root && root < hi && samples.front().second < 0;
  report["gamma1_sign_scan"] = Json{{"a", 1.0}, {"samples", scan}, {"sign_changes", changes}, {"bracket", {lo, hi}},
                                    {"expected_root", root}, {"ok", sign_ok}};
  ok = ok && sign_ok;
  report["result"] = verdict(ok);
  write_json(fs::path(ctx.out_dir) / "verify_g2.json", report);
  log_stream(ctx) << "verify-g2: " << verdict(ok) << " max coclosed residual " << worst_coclosed
                  << ", max torsion error " << worst_torsion << ", sign changes " << changes << "\n";
  return ok ? 0 : 1;
}

ClassifyResult classify_plane(const Plane7d& vectors, const Tolerances& tol) {
  Eigen::JacobiSVD<Plane7d> svd(vectors);
  const auto sv = svd.singularValues();
  if (!(sv(0) > 0) || !(sv(2) > 1e-10 * sv(0))) throw std::invalid_argument("input vectors are linearly dependent");
  ClassifyResult out;
  out.defect = associativity_defect(standard_phi<double>(), vectors);
  out.associative = std::abs(out.defect) < tol.leaf;
  if (out.associative) {
    const auto p = jordan_profile<double>(vectors, tol.leaf);
    out.s = p.s;
    out.r = p.r;
    out.striped = p.s < tol.striped_s && p.r > tol.striped_r;
  }
  return out;
}

int cmd_classify(const std::array<std::string, 3>& vectors, const Tolerances& tol, std::ostream& out) {
  Plane7d P;
  try {
    for (int c = 0; c < 3; ++c) {
      std::vector<double> v;
      std::stringstream in(vectors[c]);
      std::string item;
      while (std::getline(in, item, ',')) v.push_back(std::stod(item));
      if (v.size() != 7) throw std::invalid_argument("each vector needs 7 components");
      for (int i = 0; i < 7; ++i) P(i, c) = v[i];
    }
    const ClassifyResult r = classify_plane(P, tol);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", r.defect);
    out << "defect = " << buf << "\n";
    out << "associative = " << (r.associative ? "true" : "false") << "\n";
    if (r.associative) {
      std::snprintf(buf, sizeof buf, "%.12g", r.s);
      out << "s = " << buf << "\n";
      std::snprintf(buf, sizeof buf, "%.12g", r.r);
      out << "r = " << buf << "\n";
      out << "striped = " << (r.striped ? "true" : "false") << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

bool flags_isolated(const std::vector<std::pair<int, int>>& flagged) {
  std::set<std::pair<int, int>> remaining(flagged.begin(), flagged.end());
  while (!remaining.empty()) {
    std::vector<std::pair<int, int>> stack{*remaining.begin()};
    remaining.erase(remaining.begin());
    int xmin = stack[0].first, xmax = xmin, ymin = stack[0].second, ymax = ymin;
    while (!stack.empty()) {
      const auto [x, y] = stack.back();
      stack.pop_back();
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
      for (const auto& n : {std::pair{x + 1, y}, std::pair{x - 1, y}, std::pair{x, y + 1}, std::pair{x, y - 1}})
        if (remaining.erase(n)) stack.push_back(n);
    }
    if (xmax - xmin > 1 || ymax - ymin > 1) return false;
  }
  return true;
}

int cmd_build_assoc(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Tolerances& tol = cfg.tol;
  const ConventionSet conv = load_or_calibrate(ctx);
  const RuledPatch patch = make_patch(cfg, conv);
  ScanOptions opts;
  opts.h = cfg.h;
  Json report = header("build-assoc", ctx, &conv);
  report["recipe"] = cfg.recipe;
  report["label"] = patch.label;
  report["grid"] = Json{{"nx", patch.grid.nx}, {"ny", patch.grid.ny}, {"nt", patch.grid.nt},
                        {"domain", {patch.grid.x0, patch.grid.x1, patch.grid.y0, patch.grid.y1}}};
  const bool negative = cfg.recipe == "negative";

  std::vector<std::future<DefectReport>> jobs;
  for (const auto& p : cfg.ab)
    jobs.push_back(std::async(std::launch::async, [&, p] { return scan_patch(patch, p, opts); }));

  bool ok = true;
  Json rows = Json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const DefectReport r = jobs[k].get();
    const DefectAggregates& a = r.aggregates;
    const std::string csv = patch.label + "_" + ab_tag(r.params) + ".csv";
    fs::create_directories(ctx.out_dir);
    {
      std::ofstream out(fs::path(ctx.out_dir) / csv);
      write_csv(r, out);
    }
    const bool isolated = flags_isolated(a.flagged_z);
    const bool defect_ok = a.evaluated > 0 && a.max_defect < tol.defect;
    const bool striped_ok = a.max_s < tol.striped_s && a.min_r > tol.striped_r;
    const bool row_ok = defect_ok && isolated && striped_ok;
    ok = ok && row_ok;
    Json flagged = Json::array();
    for (const auto& [ix, iy] : a.flagged_z) {
      const cd z = patch.grid.node_z(ix, iy);
      flagged.push_back(Json{{"ix", ix}, {"iy", iy}, {"x", z.real()}, {"y", z.imag()}});
    }
    rows.push_back(Json{{"a", r.params.a},
                        {"b", r.params.b},
                        {"csv", csv},
                        {"rank_tolerance", r.rank_tol},
                        {"evaluated_nodes", a.evaluated},
                        {"flagged_nodes", a.flagged},
                        {"flagged_z", flagged},
                        {"flags_isolated", isolated},
                        {"max_defect", a.max_defect},
                        {"mean_defect", a.mean_defect},
                        {"median_defect", a.median_defect},
                        {"max_s", a.max_s},
                        {"min_r", a.min_r},
                        {"median_above_negative_threshold", a.median_defect > tol.negative_median},
                        {"ok", row_ok}});
    log_stream(ctx) << "build-assoc " << patch.label << " (a,b)=(" << r.params.a << "," << r.params.b
                    << "): max defect " << a.max_defect << ", mean " << a.mean_defect << ", flagged nodes "
                    << a.flagged << "\n";
  }
  report["rows"] = rows;
  if (cfg.mesh) {
    const std::string obj = patch.label + ".obj";
    std::ofstream out(fs::path(ctx.out_dir) / obj);
    write_obj(patch, out);
    report["mesh"] = obj;
  }
  if (negative) report["note"] = "negative control: calibration bounds are expected to fail";
  report["result"] = verdict(ok);
  write_json(fs::path(ctx.out_dir) / ("build_assoc_" + patch.label + ".json"), report);
  log_stream(ctx) << "build-assoc " << patch.label << ": " << verdict(ok) << "\n";
  return ok ? 0 : 1;
}

int cmd_flag_check(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Tolerances& tol = cfg.tol;
  Json report = header("flag-check", ctx, nullptr);
  report["inject_fault"] = cfg.inject_fault;
  const int corrupt = cfg.inject_fault ? 0 : -1;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1, 1);

  bool ok = true;
  static const char* names[5] = {"eta1", "eta2", "eta3", "kappa", "psi"};
  std::array<double, 5> worst{};
  Json families = Json::array();
  for (int f = 0; f < cfg.families; ++f) {
    const Eigen::Matrix3cd X = random_su3_algebra(rng), Y = random_su3_algebra(rng);
    const double s = 0.5 * unit(rng), t = 0.5 * unit(rng);
    const auto res = su3_structure_residual(exponential_family(X, Y), s, t, 1e-4, corrupt);
    Json entry{{"family", f}, {"s", s}, {"t", t}};
    for (int k = 0; k < 5; ++k) {
      entry[names[k]] = res[k];
      worst[k] = std::max(worst[k], res[k]);
      if (!(res[k] < tol.su3)) ok = false;
    }
    families.push_back(entry);
  }
  Json worst_json;
  for (int k = 0; k < 5; ++k) worst_json[names[k]] = worst[k];
  report["structure_equations"] = Json{{"families", families}, {"max_residual", worst_json}};

  std::vector<std::pair<std::string, PlaneCurve>> curves{{"rational-normal", rational_normal_curve()}};
  for (std::size_t k = 0; k < cfg.curves.size(); ++k) curves.emplace_back("config-" + std::to_string(k), cfg.curves[k]);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < cfg.random_curves; ++k) {
    PlaneCurve c;
    for (auto& comp : c.components) {
      std::vector<cd> coeffs;
      for (int d = 0; d <= 4; ++d) coeffs.emplace_back(gauss(rng), gauss(rng));
      comp = Polynomial(coeffs);
    }
    curves.emplace_back("random-" + std::to_string(k), c);
  }

  double worst_cubic = 0;
  Json lifts = Json::array();
  for (const auto& [name, curve] : curves) {
    std::vector<cd> zs;
    for (int k = 0; k < cfg.samples; ++k) zs.emplace_back(unit(rng), unit(rng));
    for (int variant = 1; variant <= 3; ++variant) {
      const SU3Lift lift = frenet_lift_fn(curve, variant);
      double max_cubic = 0, max_unitary = 0;
      int degenerate = 0, bad_zero_count = 0;
      std::map<int, int> zero_index;
      for (const cd z : zs) {
        try {
          max_unitary = std::max(max_unitary, su3_defect(lift(z)));
          const Eigen::Vector3d A = a_coefficients(lift, z);
          max_cubic = std::max(max_cubic, A.prod());
          int zeros = 0, which = -1;
          for (int i = 0; i < 3; ++i)
            if (A(i) < tol.a_zero) {
              ++zeros;
              which = i + 1;
            }
          if (zeros != 1) ++bad_zero_count;
          else ++zero_index[which];
        } catch (const std::domain_error&) {
          ++degenerate;
        }
      }
      const bool single_zero = bad_zero_count == 0 && zero_index.size() == 1;
      const bool lift_ok = max_cubic < tol.cubic && max_unitary < tol.unitary && single_zero &&
                           degenerate < cfg.samples;
      ok = ok && lift_ok;
      worst_cubic = std::max(worst_cubic, max_cubic);
      lifts.push_back(Json{{"curve", name},
                           {"variant", variant},
                           {"samples", cfg.samples},
                           {"degenerate_samples", degenerate},
                           {"max_cubic_norm", max_cubic},
                           {"max_su3_defect", max_unitary},
                           {"vanishing_coefficient", zero_index.size() == 1 ? zero_index.begin()->first : 0},
                           {"samples_without_single_zero", bad_zero_count},
                           {"ok", lift_ok}});
    }
  }
  report["frenet_lifts"] = lifts;
  report["result"] = verdict(ok);
  write_json(fs::path(ctx.out_dir) / "flag_check.json", report);
  log_stream(ctx) << "flag-check: " << verdict(ok) << " max structure residual "
                  << *std::max_element(worst.begin(), worst.end()) << ", max cubic norm " << worst_cubic << "\n";
  return ok ? 0 : 1;
}

int cmd_catalog(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Tolerances& tol = cfg.tol;
  const ConventionSet conv = load_or_calibrate(ctx);
  Json report = header("catalog", ctx, &conv);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0, 1);
  const Eigen::Vector3d directions[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  bool ok = true;
  Json entries = Json::array();
  for (CatalogName name : {CatalogName::A1, CatalogName::P1, CatalogName::P2}) {
    const ParamMap3 pm = catalog(name, conv);
    std::vector<Eigen::Vector3d> us;
    for (int k = 0; k < cfg.points; ++k) {
      Eigen::Vector3d u;
      for (int i = 0; i < 3; ++i) u(i) = pm.lower(i) + unit(rng) * (pm.upper(i) - pm.lower(i));
      us.push_back(u);
    }
    std::vector<SasakianPoint> pts;
    std::vector<Tangent3> frames;
    for (const auto& u : us) {
      pts.push_back(sasakian_frame(pm.map(u).normalized(), conv));
      frames.push_back(tangent_by_differences(pm.map, u, cfg.h));
    }

    // P1 is asserted for every (a, b); P2 only on the nearly-parallel ray; A1 and the rest are recorded.
    bool entry_ok = true;
    double worst = 0;
    Json defects = Json::array();
    for (const auto& p : cfg.ab) {
      double max_defect = 0;
      for (std::size_t k = 0; k < pts.size(); ++k)
        max_defect = std::max(max_defect, calibration_defect(pts[k], frames[k], p, conv));
      worst = std::max(worst, max_defect);
      const bool gated = name == CatalogName::P1 || (name == CatalogName::P2 && is_nearly_parallel_row(p));
      if (gated && !(max_defect < tol.leaf)) entry_ok = false;
      defects.push_back(Json{{"a", p.a}, {"b", p.b}, {"max_defect", max_defect},
                             {"associative", max_defect < tol.leaf}, {"asserted", gated}});
    }

    Json detectors = Json::array();
    for (const auto& w : directions) {
      bool cr = true, leg = true, sleg = true, cleg = true, kleg = true;
      double max_reeb = 0, max_j = 0, max_alpha = 0, max_omega = 0, max_k = 0;
      // Upsilon flips sign with the orientation of the frame, so its phase is compared modulo pi.
      cd phase_ref(0);
      double phase_spread = 0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const CRProfile pr = cr_legendrian_profile(pts[k], frames[k], w, conv, tol.leaf);
        cr = cr && pr.cr;
        leg = leg && pr.legendrian;
        sleg = sleg && pr.special_legendrian;
        cleg = cleg && pr.complex_legendrian;
        kleg = kleg && pr.kahler_legendrian;
        max_reeb = std::max(max_reeb, pr.reeb_distance);
        max_j = std::max(max_j, pr.j_invariance);
        max_alpha = std::max(max_alpha, pr.alpha_restriction);
        max_omega = std::max(max_omega, pr.omega_restriction);
        max_k = std::max(max_k, pr.kahler_alpha_omega);
        if (std::abs(pr.kahler_upsilon) > 0) {
          const cd squared = pr.kahler_upsilon * pr.kahler_upsilon / std::norm(pr.kahler_upsilon);
          if (phase_ref == cd(0)) phase_ref = squared;
          phase_spread = std::max(phase_spread, std::abs(squared - phase_ref));
        }
      }
      Json d{{"w", {w(0), w(1), w(2)}},
             {"cr", cr},
             {"legendrian", leg},
             {"special_legendrian", sleg},
             {"complex_legendrian", cleg},
             {"max_reeb_distance", max_reeb},
             {"max_j_invariance", max_j},
             {"max_alpha_restriction", max_alpha},
             {"max_omega_restriction", max_omega},
             {"kahler_legendrian", kleg},
             {"max_kahler_residual", max_k}};
      if (kleg) {
        d["kahler_phase_mod_pi"] = 0.5 * std::arg(phase_ref);
        d["kahler_phase_spread"] = phase_spread;
        d["kahler_special_legendrian"] = phase_spread < 1e-6;
      }
      detectors.push_back(d);
    }

    ok = ok && entry_ok;
    entries.push_back(Json{{"name", catalog_label(name)},
                           {"samples", cfg.points},
                           {"defects", defects},
                           {"detectors", detectors},
                           {"ok", entry_ok}});
    log_stream(ctx) << "catalog " << catalog_label(name) << ": max defect " << worst << " "
                    << verdict(entry_ok) << "\n";
  }
  report["entries"] = entries;
  report["result"] = verdict(ok);
  write_json(fs::path(ctx.out_dir) / "catalog.json", report);
  return ok ? 0 : 1;
}

}  // namespace hopf::cli
