#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hopf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty number");
  const auto slash = t.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad number: " + t);
    return v;
  }
  const double p = parse_real(t.substr(0, slash));
  const double q = parse_real(t.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("zero denominator in " + t);
  return p / q;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(trim(s), &used);
  if (used != trim(s).size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

bool parse_bool(const std::string& s) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw std::invalid_argument("bad boolean: " + s);
}

PlaneCurve parse_curve(const std::string& s) {
  const auto parts = split(s, ';');
  if (parts.size() != 3) throw std::invalid_argument("a plane curve needs three ';'-separated components");
  PlaneCurve c;
  for (int k = 0; k < 3; ++k) c.components[k] = Polynomial(parse_coefficients(parts[k]));
  return c;
}

}  // namespace

cd parse_coefficient(const std::string& token) {
  const std::string t = trim(token);
  const auto colon = t.find(':');
  if (colon == std::string::npos) return cd(parse_real(t), 0);
  return cd(parse_real(t.substr(0, colon)), parse_real(t.substr(colon + 1)));
}

std::vector<cd> parse_coefficients(const std::string& list) {
  std::vector<cd> out;
  for (const auto& item : split(list, ',')) out.push_back(parse_coefficient(item));
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

std::vector<SquashParams> parse_ab(const std::string& list) {
  std::vector<SquashParams> out;
  for (const auto& item : split(list, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected a:b, got " + item);
    out.emplace_back(parse_real(item.substr(0, colon)), parse_real(item.substr(colon + 1)));
  }
  if (out.empty()) throw std::invalid_argument("empty (a,b) list");
  return out;
}

void parse_grid(const std::string& text, GridSpec& grid) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw std::invalid_argument("grid must be NX,NY,NT");
  grid.nx = parse_int(parts[0]);
  grid.ny = parse_int(parts[1]);
  grid.nt = parse_int(parts[2]);
  if (grid.nx < 1 || grid.ny < 1 || grid.nt < 1) throw std::invalid_argument("grid sizes must be positive");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  static const std::map<std::string, double Tolerances::*> tolerances = {
      {"tol.coclosed", &Tolerances::coclosed},
      {"tol.torsion_rel", &Tolerances::torsion_rel},
      {"tol.nearly_parallel", &Tolerances::nearly_parallel},
      {"tol.torsion_fit", &Tolerances::torsion_fit},
      {"tol.defect", &Tolerances::defect},
      {"tol.leaf", &Tolerances::leaf},
      {"tol.striped_s", &Tolerances::striped_s},
      {"tol.striped_r", &Tolerances::striped_r},
      {"tol.negative_median", &Tolerances::negative_median},
      {"tol.su3", &Tolerances::su3},
      {"tol.cubic", &Tolerances::cubic},
      {"tol.a_zero", &Tolerances::a_zero},
      {"tol.unitary", &Tolerances::unitary},
  };
  if (auto it = tolerances.find(key); it != tolerances.end()) {
    cfg.tol.*(it->second) = parse_real(value);
  } else if (key == "seed") {
    cfg.seed = std::stoull(trim(value));
  } else if (key == "ab") {
    cfg.ab = parse_ab(value);
  } else if (key == "grid") {
    parse_grid(value, cfg.grid);
  } else if (key == "domain") {
    const auto parts = split(value, ',');
    if (parts.size() != 4) throw std::invalid_argument("domain must be x0,x1,y0,y1");
    cfg.grid.x0 = parse_real(parts[0]);
    cfg.grid.x1 = parse_real(parts[1]);
    cfg.grid.y0 = parse_real(parts[2]);
    cfg.grid.y1 = parse_real(parts[3]);
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "conventions") {
    cfg.conventions_path = trim(value);
  } else if (key == "points") {
    cfg.points = parse_int(value);
  } else if (key == "h") {
    cfg.h = parse_real(value);
  } else if (key == "recipe") {
    cfg.recipe = trim(value);
  } else if (key == "label") {
    cfg.label = trim(value);
  } else if (key == "mesh") {
    cfg.mesh = parse_bool(value);
  } else if (key == "directrix.f") {
    cfg.directrix.f_num = parse_coefficients(value);
  } else if (key == "directrix.f_den") {
    cfg.directrix.f_den = parse_coefficients(value);
  } else if (key == "directrix.g") {
    cfg.directrix.g_num = parse_coefficients(value);
  } else if (key == "directrix.g_den") {
    cfg.directrix.g_den = parse_coefficients(value);
  } else if (key == "ruling") {
    cfg.ruling.kind = trim(value);
  } else if (key == "ruling.w") {
    const auto parts = split(value, ',');
    if (parts.size() != 3) throw std::invalid_argument("ruling.w needs three components");
    cfg.ruling.w = Eigen::Vector3d(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
  } else if (key == "ruling.R") {
    cfg.ruling.num = parse_coefficients(value);
  } else if (key == "ruling.R_den") {
    cfg.ruling.den = parse_coefficients(value);
  } else if (key == "flag.families") {
    cfg.families = parse_int(value);
  } else if (key == "flag.samples") {
    cfg.samples = parse_int(value);
  } else if (key == "flag.random_curves") {
    cfg.random_curves = parse_int(value);
  } else if (key == "flag.curve") {
    cfg.curves.push_back(parse_curve(value));
  } else if (key == "inject_fault") {
    cfg.inject_fault = parse_bool(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const Tolerances& t = cfg.tol;
  for (double v : {t.coclosed, t.torsion_rel, t.nearly_parallel, t.torsion_fit, t.defect, t.leaf, t.striped_s,
                   t.striped_r, t.negative_median, t.su3, t.cubic, t.a_zero, t.unitary})
    if (!(v > 0)) throw std::invalid_argument("tolerances must be positive");
  if (cfg.points < 1 || cfg.families < 1 || cfg.samples < 1 || cfg.random_curves < 0)
    throw std::invalid_argument("counts must be positive");
  if (!(cfg.h > 0)) throw std::invalid_argument("step h must be positive");
  if (!(cfg.grid.x1 > cfg.grid.x0) || !(cfg.grid.y1 > cfg.grid.y0)) throw std::invalid_argument("empty domain");
}

std::string resolve_output_dir(const RunConfig& cfg, const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("HOPFASSOC_OUT"); env && *env) return env;
  if (!cfg.out.empty()) return cfg.out;
  return "hopfassoc_out";
}

RuledPatch make_patch(const RunConfig& cfg, const ConventionSet& conv) {
  RuledPatch patch = [&] {
    if (cfg.recipe == "baseline") return baseline_patch(cfg.grid, conv);
    if (cfg.recipe == "nontrivial") return nontrivial_patch(cfg.grid, conv);
    if (cfg.recipe == "negative") return negative_control_patch(cfg.grid, conv);
    if (cfg.recipe != "custom") throw std::invalid_argument("unknown recipe: " + cfg.recipe);
    const RationalPair pair(Rational(Polynomial(cfg.directrix.f_num), Polynomial(cfg.directrix.f_den)),
                            Rational(Polynomial(cfg.directrix.g_num), Polynomial(cfg.directrix.g_den)));
    const Rational R(Polynomial(cfg.ruling.num), Polynomial(cfg.ruling.den));
    RulingMap ruling = [&] {
      if (cfg.ruling.kind == "constant") return RulingMap::constant(cfg.ruling.w);
      if (cfg.ruling.kind == "holomorphic") return RulingMap::from_rational(R);
      if (cfg.ruling.kind == "anti-holomorphic") return RulingMap::anti_holomorphic(R);
      throw std::invalid_argument("unknown ruling kind: " + cfg.ruling.kind);
    }();
    return RuledPatch{DirectrixCurve::from_pair(pair, "custom"), ruling, cfg.grid, conv, "custom"};
  }();
  if (!cfg.label.empty()) patch.label = cfg.label;
  return patch;
}

}  // namespace hopf::cli
