// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any blocking criterion fails.

#include "commands.hpp"
#include "hopf/assocbuild.hpp"
#include "hopf/flag.hpp"
#include "hopf/g2core.hpp"
#include "hopf/sphere7.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace hopf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %-34s %s; %.2f s (limit %.0f s)%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.c_str(), elapsed, limit_seconds, in_time ? "" : " over time");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Vec8 random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec8 x;
  for (int i = 0; i < 8; ++i) x(i) = n(rng);
  return x.normalized();
}

GridSpec acceptance_grid() {
  GridSpec g;
  g.nx = g.ny = 20;
  g.nt = 8;
  return g;
}

std::vector<DefectReport> scan_all(const RuledPatch& patch) {
  std::vector<DefectReport> out;
  for (const auto& p : standard_params()) out.push_back(scan_patch(patch, p));
  return out;
}

PlaneCurve random_polynomial_curve(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> n;
  PlaneCurve c;
  for (auto& p : c.components) {
    std::vector<cd> coeffs;
    for (int k = 0; k <= degree; ++k) coeffs.emplace_back(n(rng), n(rng));
    p = Polynomial(coeffs);
  }
  return c;
}

}  // namespace

int main() {
  const ConventionSet conv;

  run(1, "G2 metric of the standard form", 1, [] {
    const auto g = metric_from_phi(standard_phi<double>());
    if (!g) return Outcome{false, "degenerate"};
    const double err = (g->metric - Matrix7d::Identity()).cwiseAbs().maxCoeff();
    return Outcome{err < 1e-12 && g->orientation == 1, fmt("max |g - I| = %.2e", err)};
  });

  run(2, "normal-form round trip", 10, [] {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0, worst_assoc = 0;
    for (int k = 0; k < 1000;) {
      const double s = u(rng) * std::numbers::pi / 6, r = u(rng) * std::numbers::pi / 2;
      if (3 * s > r) continue;
      ++k;
      const Plane7d P = build_normal_form<double>({s, r});
      worst_assoc = std::max(worst_assoc, std::abs(associativity_defect(standard_phi<double>(), P)));
      const auto p = jordan_profile(P);
      worst = std::max(worst, std::hypot(p.s - s, p.r - r));
    }
    return Outcome{worst < 1e-9 && worst_assoc < 1e-12,
                   fmt("recovery %.2e", worst) + fmt(", associativity %.2e", worst_assoc)};
  });

  run(3, "co-closedness of phi_{a,b}", 60, [&] {
    std::mt19937_64 rng(3);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const Vec8 x = random_sphere_point(rng);
      for (const auto& p : standard_params()) worst = std::max(worst, coclosed_residual(p, x, 1e-3, conv));
    }
    return Outcome{worst < 1e-6, fmt("max |d*phi| = %.2e", worst)};
  });

  run(4, "torsion identity", 60, [&] {
    std::mt19937_64 rng(4);
    double worst_rel = 0;
    for (int k = 0; k < 20; ++k) {
      const Vec8 x = random_sphere_point(rng);
      for (const auto& p : standard_params()) {
        const TorsionFit f = torsion_check(p, x, 1e-3, conv);
        worst_rel = std::max(worst_rel, std::abs(f.coeff_psi - f.expected_psi) / std::abs(f.expected_psi));
        const double scale = std::max(std::abs(f.expected_gamma1), 1.0);
        worst_rel = std::max(worst_rel, std::abs(f.coeff_gamma1 - f.expected_gamma1) / scale);
      }
    }
    // sign change of the second coefficient across b^2 = 5 a^2
    const Vec8 x = random_sphere_point(rng);
    const double a = 1.0;
    int changes = 0;
    double where = 0, prev = torsion_check(SquashParams(a, 1.5), x, 1e-3, conv).coeff_gamma1;
    for (int k = 1; k <= 12; ++k) {
      const double b = 1.5 + 0.125 * k;
      const double cur = torsion_check(SquashParams(a, b), x, 1e-3, conv).coeff_gamma1;
      if ((prev < 0) != (cur < 0)) {
        ++changes;
        where = b - 0.0625;
      }
      prev = cur;
    }
    const bool bracket = changes == 1 && std::abs(where - std::sqrt(5.0)) <= 0.0625;
    return Outcome{worst_rel < 1e-4 && bracket,
                   fmt("max relative error %.2e", worst_rel) + fmt(", sign change near b = %.4f", where)};
  });

  run(5, "Hopf circles", 5, [&] {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    double ode = 0, tangency = 0, speed = 0;
    for (int k = 0; k < 1000; ++k) {
      const Vec8 m = random_sphere_point(rng);
      const RulingDirection w(Eigen::Vector3d(n(rng), n(rng), n(rng)));
      const double t = u(rng);
      // x(t) = m . exp(t v): x' = m . exp(t v) v and x'' = m . exp(t v) v^2
      const Eigen::Quaterniond v = imag_quat(w.w * double(conv.reeb_sign));
      const Eigen::Quaterniond e = quat_exp(imag_quat(w.w * (t * conv.reeb_sign)));
      const Vec8 x = hopf_circle(m, w, t, conv);
      const Vec8 dx = sp1_act(m, e * v, conv);
      const Vec8 ddx = sp1_act(m, e * v * v, conv);
      ode = std::max(ode, (ddx + x).norm());
      speed = std::max(speed, std::abs(dx.norm() - 1));
      const SasakianPoint pt = sasakian_frame(x, conv);
      const Vec8 vel = hopf_circle_velocity(m, w, t, conv);
      tangency = std::max(tangency, (vel - pt.reeb * (pt.reeb.transpose() * vel)).norm());
      tangency = std::max(tangency, (vel - dx).norm());
    }
    return Outcome{ode < 1e-12 && tangency < 1e-12 && speed < 1e-12,
                   fmt("ODE %.2e", ode) + fmt(", A-tangency %.2e", tangency)};
  });

  run(6, "trivial baseline associatives", 120, [&] {
    double worst = 0;
    int flagged = 0;
    for (const auto& r : scan_all(baseline_patch(acceptance_grid(), conv))) {
      worst = std::max(worst, r.aggregates.max_defect);
      flagged += r.aggregates.flagged;
    }
    return Outcome{worst < 1e-6 && flagged == 0,
                   fmt("max defect %.2e", worst) + fmt(", flagged %.0f", double(flagged))};
  });

  std::vector<DefectReport> nontrivial;
  run(7, "nontrivial associatives", 120, [&] {
    nontrivial = scan_all(nontrivial_patch(acceptance_grid(), conv));
    double worst = 0;
    bool isolated = true;
    int flagged = 0;
    for (const auto& r : nontrivial) {
      worst = std::max(worst, r.aggregates.max_defect);
      isolated = isolated && cli::flags_isolated(r.aggregates.flagged_z);
      flagged += r.aggregates.flagged;
    }
    return Outcome{worst < 1e-6 && isolated,
                   fmt("max defect %.2e", worst) + fmt(", flagged nodes %.0f", double(flagged))};
  });

  run(8, "negative control", 120, [&] {
    double lowest = 1e300;
    for (const auto& r : scan_all(negative_control_patch(acceptance_grid(), conv)))
      lowest = std::min(lowest, r.aggregates.median_defect);
    return Outcome{lowest > 1e-2, fmt("smallest median defect %.3f", lowest)};
  });

  run(9, "striped profile", 30, [&] {
    const RuledPatch patch = nontrivial_patch(acceptance_grid(), conv);
    double max_s = 0, min_r = 1e300;
    for (const auto& p : standard_params())
      for (const auto& n : striped_scan(patch, p)) {
        if (n.flags & (kExcluded | kNoProfile)) {
          if (n.flags & kNoProfile) max_s = 1e300;
          continue;
        }
        max_s = std::max(max_s, n.s);
        min_r = std::min(min_r, n.r);
      }
    return Outcome{max_s < 1e-6 && min_r > 1e-3, fmt("max s %.2e", max_s) + fmt(", min r %.3e", min_r)};
  });

  run(10, "SU(3) structure equations", 10, [] {
    std::mt19937_64 rng(10);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const auto X = random_su3_algebra(rng), Y = random_su3_algebra(rng);
      for (double r : su3_structure_residual(exponential_family(X, Y), 0, 0)) worst = std::max(worst, r);
    }
    return Outcome{worst < 1e-6, fmt("max residual %.2e", worst)};
  });

  run(11, "superholomorphic Frenet lifts", 30, [] {
    std::mt19937_64 rng(11);
    std::vector<PlaneCurve> curves{rational_normal_curve(), random_polynomial_curve(rng, 4),
                                   random_polynomial_curve(rng, 3)};
    std::uniform_real_distribution<double> u(-1, 1);
    double worst_cubic = 0;
    bool one_zero = true;
    std::string indices;
    for (int v = 1; v <= 3; ++v) {
      int index = -1;
      for (const auto& c : curves) {
        const SU3Lift lift = frenet_lift_fn(c, v);
        for (int k = 0; k < 200; ++k) {
          const cd z(u(rng), u(rng));
          const Eigen::Vector3d A = a_coefficients(lift, z);
          worst_cubic = std::max(worst_cubic, A.prod());
          int zeros = 0, which = -1;
          for (int i = 0; i < 3; ++i)
            if (A(i) < 1e-8) {
              ++zeros;
              which = i;
            }
          if (zeros != 1 || (index >= 0 && which != index)) one_zero = false;
          index = which;
        }
      }
      indices += (v > 1 ? "," : "") + std::string("A") + std::to_string(index + 1);
    }
    return Outcome{worst_cubic < 1e-10 && one_zero,
                   fmt("max |A1 A2 A3| %.2e", worst_cubic) + ", vanishing per lift " + indices};
  });

  run(12, "convention calibration", 120, [] {
    const CalibrationResult first = convention_calibration();
    int passing = 0;
    for (const auto& t : first.trials) passing += t.leaf_ok && t.baseline_ok;
    // persist, reload, and repeat
    const fs::path dir = fs::temp_directory_path() / "hopfassoc_acceptance_conventions";
    fs::remove_all(dir);
    cli::CommandContext ctx;
    ctx.out_dir = dir.string();
    std::ostringstream log;
    ctx.log = &log;
    const ConventionSet stored = cli::load_or_calibrate(ctx);
    const ConventionSet reloaded = cli::load_or_calibrate(ctx);
    const CalibrationResult second = convention_calibration();
    bool same = second.trials.size() == first.trials.size();
    for (std::size_t k = 0; same && k < first.trials.size(); ++k)
      same = first.trials[k].leaf_defect == second.trials[k].leaf_defect &&
             first.trials[k].baseline_defect == second.trials[k].baseline_defect;
    fs::remove_all(dir);
    const bool ok = passing == 1 && stored == first.selected && reloaded == stored && same &&
                    second.selected == first.selected;
    return Outcome{ok, std::to_string(passing) + " of " + std::to_string(first.trials.size()) + " pass, selected " +
                           first.selected.str()};
  });

  std::printf("criterion 13: SKIP  %-34s STRETCH, not implemented (non-blocking)\n", "N_{1,1} defect suite");
  std::printf("%s: %d blocking failure(s)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
