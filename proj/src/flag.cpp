#include "hopf/flag.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <sstream>
#include <stdexcept>

namespace hopf {

namespace {

const cd kI(0, 1);

// Skew-hermitian, traceless part; finite-difference quotients are only approximately in su(3).
Eigen::Matrix3cd su3_part(const Eigen::Matrix3cd& m) {
  Eigen::Matrix3cd a = 0.5 * (m - m.adjoint());
  a -= (a.trace() / 3.0) * Eigen::Matrix3cd::Identity();
  return a;
}

MCComponents read_unchecked(const Eigen::Matrix3cd& gamma) {
  MCComponents c;
  c.kappa = -1.5 * gamma(2, 2).imag();
  c.psi = 0.5 * (gamma(0, 0).imag() - gamma(1, 1).imag());
  c.eta3 = gamma(1, 0);
  c.eta2 = gamma(0, 2);
  c.eta1 = gamma(2, 1);
  return c;
}

struct ComponentPair {
  MCComponents s, t;
};

}  // namespace

double su3_defect(const SU3& g) {
  const double unit = (g.adjoint() * g - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
  return std::max(unit, std::abs(g.determinant() - cd(1)));
}

bool is_su3(const SU3& g, double tol) { return su3_defect(g) < tol; }

Eigen::Matrix3cd assemble_mc(const MCComponents& c) {
  Eigen::Matrix3cd m;
  m << kI * (c.kappa / 3 + c.psi), -std::conj(c.eta3), c.eta2,  //
      c.eta3, kI * (c.kappa / 3 - c.psi), -std::conj(c.eta1),   //
      -std::conj(c.eta2), c.eta1, -2.0 * kI * c.kappa / 3.0;
  return m;
}

MCComponents read_mc(const Eigen::Matrix3cd& gamma, double tol) {
  const double herm = (gamma + gamma.adjoint()).cwiseAbs().maxCoeff();
  const double trace = std::abs(gamma.trace());
  if (!(std::max(herm, trace) < tol)) {
    std::ostringstream msg;
    msg << "not tangent to SU(3): hermitian defect " << herm << ", trace " << trace;
    throw std::invalid_argument(msg.str());
  }
  return read_unchecked(gamma);
}

MCComponents mc_components(const SU3& g, const Eigen::Matrix3cd& gdot, double tol) {
  return read_mc(g.adjoint() * gdot, tol);
}

std::array<double, 5> su3_structure_residual(const SU3Family& family, double s, double t, double h, int corrupt) {
  if (!(h > 1e-7)) throw std::invalid_argument("step too small for nested differences");
  auto components = [&](double ss, double tt) {
    const SU3 g = family(ss, tt);
    const Eigen::Matrix3cd gs = (family(ss + h, tt) - family(ss - h, tt)) / (2 * h);
    const Eigen::Matrix3cd gt = (family(ss, tt + h) - family(ss, tt - h)) / (2 * h);
    return ComponentPair{read_unchecked(su3_part(g.adjoint() * gs)), read_unchecked(su3_part(g.adjoint() * gt))};
  };
  const ComponentPair c0 = components(s, t);
  const ComponentPair sp = components(s + h, t), sm = components(s - h, t);
  const ComponentPair tp = components(s, t + h), tm = components(s, t - h);
  auto d = [&](auto get) { return (get(sp.t) - get(sm.t) - get(tp.s) + get(tm.s)) / (2 * h); };
  auto wedge = [&](auto a, auto b) { return a(c0.s) * b(c0.t) - a(c0.t) * b(c0.s); };

  auto e1 = [](const MCComponents& c) { return c.eta1; };
  auto e2 = [](const MCComponents& c) { return c.eta2; };
  auto e3 = [](const MCComponents& c) { return c.eta3; };
  auto c1 = [](const MCComponents& c) { return std::conj(c.eta1); };
  auto c2 = [](const MCComponents& c) { return std::conj(c.eta2); };
  auto c3 = [](const MCComponents& c) { return std::conj(c.eta3); };
  auto kp = [](const MCComponents& c) { return cd(c.kappa); };
  auto ps = [](const MCComponents& c) { return cd(c.psi); };
  auto kmp = [](const MCComponents& c) { return cd(c.kappa - c.psi); };
  auto kpp = [](const MCComponents& c) { return cd(c.kappa + c.psi); };

  std::array<double, 5> sign{1, 1, 1, 1, 1};
  if (corrupt >= 0 && corrupt < 5) sign[corrupt] = -1;

  std::array<double, 5> out{};
  out[0] = std::abs(d(e1) - (kI * wedge(kmp, e1) - sign[0] * std::conj(wedge(e2, e3))));
  out[1] = std::abs(d(e2) - (-kI * wedge(kpp, e2) - sign[1] * std::conj(wedge(e3, e1))));
  out[2] = std::abs(d(e3) - (2.0 * kI * wedge(ps, e3) - sign[2] * std::conj(wedge(e1, e2))));
  out[3] = std::abs(d(kp) - sign[3] * 1.5 * kI * (wedge(e1, c1) - wedge(e2, c2)));
  out[4] = std::abs(d(ps) - sign[4] * 0.5 * kI * (-wedge(e1, c1) - wedge(e2, c2) + 2.0 * wedge(e3, c3)));
  return out;
}

Eigen::Matrix3cd random_su3_algebra(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  MCComponents c;
  c.kappa = n(rng);
  c.psi = n(rng);
  c.eta1 = cd(n(rng), n(rng));
  c.eta2 = cd(n(rng), n(rng));
  c.eta3 = cd(n(rng), n(rng));
  return assemble_mc(c);
}

SU3Family exponential_family(const Eigen::Matrix3cd& X, const Eigen::Matrix3cd& Y) {
  return [X, Y](double s, double t) { return SU3((s * X + t * Y).exp()); };
}

SU3Family product_family(const Eigen::Matrix3cd& X, const Eigen::Matrix3cd& Y) {
  return [X, Y](double s, double t) { return SU3(Eigen::Matrix3cd(s * X).exp() * Eigen::Matrix3cd(t * Y).exp()); };
}

Eigen::Vector3cd PlaneCurve::value(cd z) const { return derivative(z, 0); }

Eigen::Vector3cd PlaneCurve::derivative(cd z, int order) const {
  Eigen::Vector3cd out;
  for (int k = 0; k < 3; ++k) {
    Polynomial p = components[k];
    for (int o = 0; o < order; ++o) p = p.derivative();
    out(k) = p(z);
  }
  return out;
}

PlaneCurve rational_normal_curve() {
  return PlaneCurve{{Polynomial({cd(1)}), Polynomial({cd(0), cd(std::sqrt(2.0))}), Polynomial({cd(0), cd(0), cd(1)})}};
}

SU3 frenet_lift(const PlaneCurve& c, cd z, int variant) {
  if (variant < 1 || variant > 3) throw std::invalid_argument("lift variant must be 1, 2 or 3");
  Eigen::Matrix3cd M;
  M << c.value(z), c.derivative(z, 1), c.derivative(z, 2);
  const double scale = M.colwise().norm().maxCoeff();
  Eigen::Matrix3cd E;
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3cd v = M.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) v -= E.col(i).dot(v) * E.col(i);
    const double n = v.norm();
    if (!(n > 1e-10 * std::max(1.0, scale))) {
      std::ostringstream msg;
      msg << "Frenet degeneracy at z = " << z;
      throw std::domain_error(msg.str());
    }
    E.col(j) = v / n;
  }
  const cd det = E.determinant();
  E.col(2) *= std::conj(det) / std::abs(det);
  // cyclic permutations keep det = 1
  SU3 out;
  for (int j = 0; j < 3; ++j) out.col(j) = E.col((j + variant - 1) % 3);
  return out;
}

SU3Lift frenet_lift_fn(const PlaneCurve& c, int variant) {
  return [c, variant](cd z) { return frenet_lift(c, z, variant); };
}

Eigen::Vector3d a_coefficients(const SU3Lift& lift, cd z, double h) {
  const SU3 g = lift(z);
  auto diff = [&](double step) { return Eigen::Matrix3cd((lift(z + step) - lift(z - step)) / (2 * step)); };
  const Eigen::Matrix3cd gdot = (4.0 * diff(h / 2) - diff(h)) / 3.0;
  const MCComponents c = read_unchecked(su3_part(g.adjoint() * gdot));
  const Eigen::Vector3d mags(std::abs(c.eta1), std::abs(c.eta2), std::abs(c.eta3));
  const double n = mags.norm();
  if (!(n > 1e-12)) throw std::domain_error("lift has zero tangent");
  return mags / n;
}

double cubic_norm(const SU3Lift& lift, cd z, double h) { return a_coefficients(lift, z, h).prod(); }

}  // namespace hopf
