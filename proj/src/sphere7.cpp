#include "hopf/sphere7.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hopf {

namespace {

const Eigen::Quaterniond kUnits[3] = {Eigen::Quaterniond(0, 1, 0, 0), Eigen::Quaterniond(0, 0, 1, 0),
                                      Eigen::Quaterniond(0, 0, 0, 1)};

Eigen::Quaterniond scaled(const Eigen::Quaterniond& q, double s) {
  return Eigen::Quaterniond(q.w() * s, q.x() * s, q.y() * s, q.z() * s);
}

std::pair<int, int> pairing_slots(ContactPairing pairing, int s) {
  if (pairing == ContactPairing::Adjacent) return {2 * s, 2 * s + 1};
  return {s, s + 2};
}

Vec8 check_unit(const Vec8& x) {
  if (std::abs(x.norm() - 1.0) > 1e-9) throw std::invalid_argument("point is not on the unit sphere");
  return x;
}

Eigen::Matrix<double, 8, 3> orthonormal_columns(const Tangent3& T) {
  Eigen::JacobiSVD<Tangent3> svd(T, Eigen::ComputeFullU);
  if (!(svd.singularValues()(2) > 1e-12 * std::max(1.0, svd.singularValues()(0))))
    throw std::invalid_argument("rank-deficient 3-plane");
  return svd.matrixU().leftCols<3>();
}

// Rotor carrying i to w-hat that stays defined at w = -i.
Eigen::Quaterniond fibre_rotor(const Eigen::Vector3d& w) {
  const Eigen::Quaterniond target = imag_quat(w);
  if (w.x() < -1.0 + 1e-12) return Eigen::Quaterniond(0, 0, 1, 0);
  return rotor_between(kUnits[0], target);
}

Eigen::Matrix<double, 7, 1> zero7() { return Eigen::Matrix<double, 7, 1>::Zero(); }

}  // namespace

std::string ConventionSet::str() const {
  std::ostringstream out;
  out << "side=" << (side == MultSide::Right ? "right" : "left") << " reeb=" << (reeb_sign > 0 ? "+1" : "-1")
      << " pairing=" << (pairing == ContactPairing::Adjacent ? "adjacent" : "interleaved")
      << " phi=" << (phi_sign > 0 ? "+1" : "-1");
  return out.str();
}

ConventionSet ConventionSet::parse(const std::string& text) {
  for (const auto& c : all())
    if (c.str() == text) return c;
  throw std::invalid_argument("unrecognised convention string: " + text);
}

std::vector<ConventionSet> ConventionSet::all() {
  std::vector<ConventionSet> out;
  for (MultSide side : {MultSide::Right, MultSide::Left})
    for (int reeb : {1, -1})
      for (ContactPairing pairing : {ContactPairing::Adjacent, ContactPairing::Interleaved})
        for (int phi : {1, -1}) out.push_back({side, reeb, pairing, phi});
  return out;
}

SquashParams::SquashParams(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("squashing parameters must be positive");
}

MetricDiagd SquashParams::weights() const {
  Eigen::VectorXd w(7);
  w << a, a, a, b, b, b, b;
  return MetricDiagd(w);
}

RulingDirection::RulingDirection(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0)) throw std::invalid_argument("ruling direction must be nonzero");
  w = v / n;
}

Eigen::Quaterniond RulingDirection::hat() const { return imag_quat(w); }

Frame8 SasakianPoint::frame() const {
  Frame8 F;
  F << reeb, cframe;
  return F;
}

Eigen::Quaterniond slot(const Vec8& x, int s) {
  return Eigen::Quaterniond(x(4 * s), x(4 * s + 1), x(4 * s + 2), x(4 * s + 3));
}

void set_slot(Vec8& x, int s, const Eigen::Quaterniond& q) {
  x(4 * s) = q.w();
  x(4 * s + 1) = q.x();
  x(4 * s + 2) = q.y();
  x(4 * s + 3) = q.z();
}

Vec8 right_mul(const Vec8& x, const Eigen::Quaterniond& q) {
  Vec8 out;
  set_slot(out, 0, slot(x, 0) * q);
  set_slot(out, 1, slot(x, 1) * q);
  return out;
}

Vec8 left_mul(const Eigen::Quaterniond& q, const Vec8& x) {
  Vec8 out;
  set_slot(out, 0, q * slot(x, 0));
  set_slot(out, 1, q * slot(x, 1));
  return out;
}

Vec8 sp1_act(const Vec8& x, const Eigen::Quaterniond& q, const ConventionSet& conv) {
  return conv.side == MultSide::Right ? right_mul(x, q) : left_mul(q, x);
}

Eigen::Quaterniond imag_quat(const Eigen::Vector3d& w) { return Eigen::Quaterniond(0, w.x(), w.y(), w.z()); }

Eigen::Quaterniond quat_exp(const Eigen::Quaterniond& v) {
  const double n = v.vec().norm();
  if (n == 0) return Eigen::Quaterniond(std::exp(v.w()), 0, 0, 0);
  const double s = std::sin(n) / n;
  const double e = std::exp(v.w());
  return Eigen::Quaterniond(e * std::cos(n), e * s * v.x(), e * s * v.y(), e * s * v.z());
}

Eigen::Quaterniond rotor_between(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  // q = 1 + a.b + b x a rotates b onto a under v -> q v conj(q)
  const Eigen::Vector3d va = a.vec(), vb = b.vec();
  const Eigen::Vector3d axis = vb.cross(va);
  Eigen::Quaterniond q(1.0 + va.dot(vb), axis.x(), axis.y(), axis.z());
  const double n = q.norm();
  if (!(n > 1e-14)) throw std::domain_error("rotor_between: antipodal directions");
  return scaled(q, 1.0 / n);
}

Eigen::Quaterniond ruling_rotor(const Eigen::Vector3d& w) {
  const Eigen::Quaterniond south(0, 0, 0, -1);
  if (w.z() > 1.0 - 1e-14) throw std::domain_error("ruling_rotor: undefined at the north pole");
  const Eigen::Quaterniond r = rotor_between(south, imag_quat(w));
  const Eigen::Quaterniond r0 = rotor_between(south, kUnits[0]);
  return r0.conjugate() * r;
}

Vec8 from_c4(const Vec4c& c, const ConventionSet& conv) {
  Vec8 x;
  for (int s = 0; s < 2; ++s) {
    const auto [p, q] = pairing_slots(conv.pairing, s);
    // slot = conj(c_p) + j conj(c_q)
    x(4 * s) = c(p).real();
    x(4 * s + 1) = -c(p).imag();
    x(4 * s + 2) = c(q).real();
    x(4 * s + 3) = c(q).imag();
  }
  return x;
}

Vec4c to_c4(const Vec8& x, const ConventionSet& conv) {
  Vec4c c;
  for (int s = 0; s < 2; ++s) {
    const auto [p, q] = pairing_slots(conv.pairing, s);
    c(p) = cd(x(4 * s), -x(4 * s + 1));
    c(q) = cd(x(4 * s + 2), x(4 * s + 3));
  }
  return c;
}

Vec8 complex_structure(const Vec8& v, int p, const ConventionSet& conv) {
  return sp1_act(v, scaled(kUnits[p], conv.reeb_sign), conv);
}

Vec8 complex_structure(const Vec8& v, const Eigen::Vector3d& w, const ConventionSet& conv) {
  return sp1_act(v, scaled(imag_quat(w), conv.reeb_sign), conv);
}

Mat8 complex_structure_matrix(int p, const ConventionSet& conv) {
  Mat8 M;
  for (int i = 0; i < 8; ++i) M.col(i) = complex_structure(Vec8::Unit(i), p, conv);
  return M;
}

SasakianPoint sasakian_frame(const Vec8& x_in, const ConventionSet& conv) {
  const Vec8 x = check_unit(x_in);
  SasakianPoint pt;
  pt.x = x;
  for (int p = 0; p < 3; ++p) pt.reeb.col(p) = complex_structure(x, p, conv);
  const Mat8 P = Mat8::Identity() - x * x.transpose() - pt.reeb * pt.reeb.transpose();
  // Seed: first standard basis vector with a substantial C-component; the remaining legs follow
  // from the quaternionic structure so that the coframe has the adapted normal form.
  Vec8 c1 = Vec8::Zero();
  for (int i = 0; i < 8; ++i) {
    const Vec8 v = P * Vec8::Unit(i);
    if (v.norm() > 0.5) {
      c1 = v.normalized();
      break;
    }
  }
  pt.cframe.col(0) = c1;
  pt.cframe.col(1) = -complex_structure(c1, 0, conv);
  pt.cframe.col(2) = -complex_structure(c1, 1, conv);
  pt.cframe.col(3) = complex_structure(c1, 2, conv);
  return pt;
}

namespace {

struct AmbientPieces {
  std::array<KFormd, 3> alpha;
  std::array<KFormd, 3> omega;
};

AmbientPieces ambient_pieces(const SasakianPoint& pt, const ConventionSet& conv) {
  AmbientPieces out;
  const Mat8 P = pt.c_projector();
  for (int p = 0; p < 3; ++p) {
    out.alpha[p] = KFormd::one_form(Eigen::VectorXd(pt.reeb.col(p)));
    const Mat8 W = P * complex_structure_matrix(p, conv).transpose() * P;
    out.omega[p] = KFormd::two_form(Eigen::MatrixXd(W));
  }
  return out;
}

KFormd gamma1_from(const AmbientPieces& ap) { return 0.5 * wedge(ap.omega[0], ap.omega[0]); }

KFormd gamma2_from(const AmbientPieces& ap) {
  KFormd g = wedge(wedge(ap.alpha[1], ap.alpha[2]), ap.omega[0]);
  g += wedge(wedge(ap.alpha[2], ap.alpha[0]), ap.omega[1]);
  g += wedge(wedge(ap.alpha[0], ap.alpha[1]), ap.omega[2]);
  return -g;
}

Eigen::MatrixXd frame_matrix(const SasakianPoint& pt) { return Eigen::MatrixXd(pt.frame()); }

}  // namespace

KFormd phi_ambient(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv) {
  const AmbientPieces ap = ambient_pieces(pt, conv);
  KFormd phi = (p.a * p.a * p.a) * wedge(wedge(ap.alpha[0], ap.alpha[1]), ap.alpha[2]);
  for (int q = 0; q < 3; ++q) phi -= (p.a * p.b * p.b) * wedge(ap.alpha[q], ap.omega[q]);
  return double(conv.phi_sign) * phi;
}

KFormd psi_ambient(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv) {
  const AmbientPieces ap = ambient_pieces(pt, conv);
  const double b2 = p.b * p.b;
  KFormd psi = (b2 * b2) * gamma1_from(ap) + (p.a * p.a * b2) * gamma2_from(ap);
  return double(conv.phi_sign) * psi;
}

KFormd gamma1_ambient(const SasakianPoint& pt, const ConventionSet& conv) {
  return gamma1_from(ambient_pieces(pt, conv));
}

KFormd phi_ab_at(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv) {
  return pullback(phi_ambient(pt, p, conv), frame_matrix(pt));
}

KFormd psi_ab_at(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv) {
  return pullback(psi_ambient(pt, p, conv), frame_matrix(pt));
}

KFormd gamma1_at(const SasakianPoint& pt, const ConventionSet& conv) {
  return pullback(gamma1_ambient(pt, conv), frame_matrix(pt));
}

KFormd gamma2_at(const SasakianPoint& pt, const ConventionSet& conv) {
  return pullback(gamma2_from(ambient_pieces(pt, conv)), frame_matrix(pt));
}

Mat8 gab_matrix(const SasakianPoint& pt, const SquashParams& p) {
  return p.a * p.a * pt.reeb * pt.reeb.transpose() + p.b * p.b * pt.c_projector();
}

double normalized_phi_value(const SasakianPoint& pt, const Tangent3& T, const SquashParams& p,
                            const ConventionSet& conv) {
  return normalized_phi<double, 8>(phi_ambient(pt, p, conv), T, gab_matrix(pt, p));
}

double calibration_defect(const SasakianPoint& pt, const Tangent3& T, const SquashParams& p,
                          const ConventionSet& conv) {
  return 1.0 - std::abs(normalized_phi_value(pt, T, p, conv));
}

Eigen::Matrix<double, 7, 3> to_flat_model(const SasakianPoint& pt, const Tangent3& T, const SquashParams& p) {
  Eigen::Matrix<double, 7, 3> out = pt.coframe() * T;
  out.topRows<3>() *= p.a;
  out.bottomRows<4>() *= p.b;
  return out;
}

StereoChart::StereoChart(const Vec8& center) : center_(check_unit(center)) {
  Eigen::Matrix<double, 8, 9> M;
  M << center_, Mat8::Identity();
  Eigen::HouseholderQR<Eigen::Matrix<double, 8, 9>> qr(M);
  const Mat8 Q = qr.householderQ() * Mat8::Identity();
  basis_ = Q.rightCols<7>();
}

Vec8 StereoChart::point(const Eigen::Matrix<double, 7, 1>& y) const {
  const double s = y.squaredNorm();
  return ((1.0 - s) * center_ + 2.0 * basis_ * y) / (1.0 + s);
}

Eigen::Matrix<double, 8, 7> StereoChart::jacobian(const Eigen::Matrix<double, 7, 1>& y) const {
  const double s = y.squaredNorm();
  const double d = 1.0 + s;
  const Vec8 By = basis_ * y;
  Eigen::Matrix<double, 8, 7> J;
  for (int i = 0; i < 7; ++i)
    J.col(i) = -4.0 * y(i) / (d * d) * center_ + 2.0 / d * basis_.col(i) - 4.0 * y(i) / (d * d) * By;
  return J;
}

Eigen::Matrix<double, 7, 1> StereoChart::coordinates(const Vec8& x) const {
  const double denom = 1.0 + center_.dot(x);
  if (!(denom > 1e-14)) throw std::domain_error("point is the singular point of the chart");
  return basis_.transpose() * x / denom;
}

double StereoChart::distance_to_singular_point(const Eigen::Matrix<double, 7, 1>& y) const {
  return (point(y) + center_).norm();
}

FormFieldd chart_field(const StereoChart& chart, int degree, std::function<KFormd(const SasakianPoint&)> coframe_form,
                       const ConventionSet& conv) {
  FormFieldd F;
  F.dim = 7;
  F.degree = degree;
  F.eval = [chart, coframe_form, conv](const Eigen::VectorXd& y) {
    const Eigen::Matrix<double, 7, 1> yy = y;
    Vec8 x = chart.point(yy);
    x.normalize();
    const SasakianPoint pt = sasakian_frame(x, conv);
    const Eigen::MatrixXd M = pt.coframe() * chart.jacobian(yy);
    return pullback(coframe_form(pt), M);
  };
  F.boundary_distance = [chart](const Eigen::VectorXd& y) {
    return chart.distance_to_singular_point(Eigen::Matrix<double, 7, 1>(y)) - StereoChart::kExclusionRadius;
  };
  return F;
}

KFormd chart_to_coframe(const StereoChart& chart, const KFormd& form, const SasakianPoint& pt) {
  // at the centre the chart differential is 2 * basis
  const Eigen::MatrixXd M = 0.5 * chart.basis().transpose() * pt.frame();
  return pullback(form, M);
}

double coclosed_residual(const SquashParams& p, const Vec8& x, double h, const ConventionSet& conv, double epsilon) {
  const StereoChart chart(x);
  const MetricDiagd g = p.weights();
  const KFormd beta_volume = KFormd::basis(7, {4, 5, 6, 7});
  auto star_phi = [p, g, conv, epsilon, beta_volume](const SasakianPoint& pt) {
    KFormd phi = phi_ab_at(pt, p, conv);
    if (epsilon != 0.0) {
      const Vec8 v = pt.c_projector() * Vec8::Unit(0);
      const Eigen::VectorXd u = pt.coframe() * v;
      phi += epsilon * interior(u, beta_volume);
    }
    return hodge(phi, g, 1);
  };
  const FormFieldd F = chart_field(chart, 4, star_phi, conv);
  const KFormd d = numeric_d(F, Eigen::VectorXd(zero7()), h);
  return chart_to_coframe(chart, d, sasakian_frame(x, conv)).coefficient_norm();
}

double expected_torsion_psi(const SquashParams& p) {
  return -2.0 * (p.a * p.a + p.b * p.b) / (p.a * p.b * p.b);
}

double expected_torsion_gamma1(const SquashParams& p) {
  return -2.0 * p.b * p.b * (5.0 * p.a * p.a - p.b * p.b) / p.a;
}

TorsionFit torsion_check(const SquashParams& p, const Vec8& x, double h, const ConventionSet& conv) {
  const StereoChart chart(x);
  auto phi = [p, conv](const SasakianPoint& pt) { return phi_ab_at(pt, p, conv); };
  const FormFieldd F = chart_field(chart, 3, phi, conv);
  const SasakianPoint pt = sasakian_frame(x, conv);
  const KFormd dphi = chart_to_coframe(chart, numeric_d(F, Eigen::VectorXd(zero7()), h), pt);
  const KFormd psi = psi_ab_at(pt, p, conv);
  const KFormd g1 = gamma1_at(pt, conv);

  Eigen::MatrixXd A(35, 2);
  Eigen::VectorXd rhs(35);
  int row = 0;
  for (unsigned mask = 0; mask < 128; ++mask) {
    if (std::popcount(mask) != 4) continue;
    const MultiIndex I(static_cast<std::uint16_t>(mask));
    A(row, 0) = psi.coeff(I);
    A(row, 1) = g1.coeff(I);
    rhs(row) = dphi.coeff(I);
    ++row;
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(rhs);
  TorsionFit fit;
  fit.coeff_psi = c(0);
  fit.coeff_gamma1 = c(1);
  fit.residual = (A * c - rhs).norm();
  fit.expected_psi = expected_torsion_psi(p);
  fit.expected_gamma1 = expected_torsion_gamma1(p);
  return fit;
}

Eigen::Matrix<double, 5, 1> hopf_h(const Vec8& x, const ConventionSet& conv) {
  const Eigen::Quaterniond q1 = slot(x, 0), q2 = slot(x, 1);
  const Eigen::Quaterniond m = conv.side == MultSide::Right ? q1 * q2.conjugate() : q1.conjugate() * q2;
  Eigen::Matrix<double, 5, 1> out;
  out << q1.squaredNorm() - q2.squaredNorm(), 2 * m.w(), 2 * m.x(), 2 * m.y(), 2 * m.z();
  return out;
}

Vec4c hopf_pw(const Vec8& x, const RulingDirection& w, const ConventionSet& conv) {
  const Eigen::Quaterniond q = fibre_rotor(w.w);
  Vec4c c;
  if (conv.side == MultSide::Right) {
    c = to_c4(right_mul(x, q.conjugate()), conv);
  } else {
    Vec8 y = left_mul(q, x);
    set_slot(y, 0, slot(y, 0).conjugate());
    set_slot(y, 1, slot(y, 1).conjugate());
    c = to_c4(y, conv);
  }
  int anchor = 0;
  const double big = c.cwiseAbs().maxCoeff();
  while (anchor < 3 && std::abs(c(anchor)) < 1e-8 * big) ++anchor;
  const cd phase = std::abs(c(anchor)) > 0 ? std::conj(c(anchor)) / std::abs(c(anchor)) : cd(1);
  return c.normalized() * phase;
}

double cp3_distance(const Vec4c& a, const Vec4c& b) {
  // sine of the Fubini-Study angle, from the orthogonal component (stable near 0)
  const Vec4c ua = a.normalized(), ub = b.normalized();
  return std::min(1.0, (ub - ua * ua.dot(ub)).norm());
}

Vec8 hopf_circle(const Vec8& m, const RulingDirection& w, double t, const ConventionSet& conv) {
  return sp1_act(m, quat_exp(scaled(w.hat(), t * conv.reeb_sign)), conv);
}

Vec8 hopf_circle_velocity(const Vec8& m, const RulingDirection& w, double t, const ConventionSet& conv) {
  return complex_structure(hopf_circle(m, w, t, conv), w.w, conv);
}

Vec8 contact_structure(const SasakianPoint& pt, const Vec8& v, const Eigen::Vector3d& w, const ConventionSet& conv) {
  const Mat8 PA = pt.reeb * pt.reeb.transpose();
  const Vec8 c = pt.c_projector() * v;
  const Vec8 a = PA * v;
  return complex_structure(c, w, conv) - PA * complex_structure(a, w, conv);
}

cd complex_volume(const SasakianPoint& pt, const Tangent3& U, const Eigen::Vector3d& w_in, const ConventionSet& conv) {
  const Eigen::Vector3d w = w_in.normalized();
  const Eigen::Vector3d w2 = w.unitOrthogonal();
  const Eigen::Vector3d w3 = w.cross(w2);
  const Mat8 P = pt.c_projector();
  // zeta = alpha_{w2} - i alpha_{w3}, theta = Omega_{w2} + i Omega_{w3}
  const Vec8 A2 = complex_structure(pt.x, w2, conv), A3 = complex_structure(pt.x, w3, conv);
  auto zeta = [&](const Vec8& u) { return cd(A2.dot(u), -A3.dot(u)); };
  auto theta = [&](const Vec8& u, const Vec8& v) {
    const Vec8 pu = P * u, pv = P * v;
    return cd(complex_structure(pu, w2, conv).dot(pv), complex_structure(pu, w3, conv).dot(pv));
  };
  const Vec8 u1 = U.col(0), u2 = U.col(1), u3 = U.col(2);
  return -(zeta(u1) * theta(u2, u3) - zeta(u2) * theta(u1, u3) + zeta(u3) * theta(u1, u2));
}

CRProfile cr_legendrian_profile(const SasakianPoint& pt, const Tangent3& P, const Eigen::Vector3d& w_in,
                                const ConventionSet& conv, double tol) {
  const Eigen::Vector3d w = w_in.normalized();
  const Eigen::Matrix<double, 8, 3> Q = orthonormal_columns(P);
  const Mat8 proj = Q * Q.transpose();
  auto legendrian_residuals = [&](const Eigen::Vector3d& u, double& alpha_res, double& omega_res) {
    const Vec8 Au = complex_structure(pt.x, u, conv);
    alpha_res = (Q.transpose() * Au).cwiseAbs().maxCoeff();
    omega_res = 0;
    for (int i = 0; i < 3; ++i) {
      const Vec8 JQ = contact_structure(pt, Q.col(i), u, conv);
      for (int j = i + 1; j < 3; ++j) omega_res = std::max(omega_res, std::abs(JQ.dot(Q.col(j))));
    }
  };
  auto cr_residuals = [&](const Eigen::Vector3d& u, double& reeb_res, double& j_res) {
    const Vec8 Au = complex_structure(pt.x, u, conv);
    reeb_res = (Au - proj * Au).norm();
    const Mat8 off = Mat8::Identity() - Au * Au.transpose();
    Eigen::JacobiSVD<Eigen::Matrix<double, 8, 3>> svd(off * Q, Eigen::ComputeFullU);
    j_res = 0;
    for (int i = 0; i < 2; ++i) {
      const Vec8 Jk = contact_structure(pt, Vec8(svd.matrixU().col(i)), u, conv);
      j_res = std::max(j_res, (Jk - proj * Jk).norm());
    }
  };

  CRProfile out;
  cr_residuals(w, out.reeb_distance, out.j_invariance);
  out.cr = out.reeb_distance < tol && out.j_invariance < tol;
  legendrian_residuals(w, out.alpha_restriction, out.omega_restriction);
  out.legendrian = out.alpha_restriction < tol && out.omega_restriction < tol;

  const cd ups = complex_volume(pt, Q, w, conv);
  out.re_upsilon = ups.real();
  out.im_upsilon = std::abs(ups.imag());
  out.special_legendrian = out.legendrian && out.im_upsilon < tol;

  // Flat Kaehler structure I_w of the cone, with its standard holomorphic volume form.
  out.kahler_alpha_omega = out.alpha_restriction;
  for (int i = 0; i < 3; ++i) {
    const Vec8 IQ = complex_structure(Vec8(Q.col(i)), w, conv);
    for (int j = i + 1; j < 3; ++j) out.kahler_alpha_omega = std::max(out.kahler_alpha_omega, std::abs(IQ.dot(Q.col(j))));
  }
  out.kahler_legendrian = out.kahler_alpha_omega < tol;
  const Eigen::Quaterniond q = fibre_rotor(w);
  auto holo = [&](const Vec8& v) { return to_c4(right_mul(v, q.conjugate()), conv); };
  Eigen::Matrix4cd M;
  M.col(0) = holo(pt.x);
  for (int i = 0; i < 3; ++i) M.col(i + 1) = holo(Q.col(i));
  out.kahler_upsilon = M.determinant();

  const Eigen::Vector3d w2 = w.unitOrthogonal();
  const Eigen::Vector3d w3 = w.cross(w2);
  double a2, o2, a3, o3;
  legendrian_residuals(w2, a2, o2);
  legendrian_residuals(w3, a3, o3);
  out.complex_legendrian_residual = std::max({out.reeb_distance, out.j_invariance, a2, o2, a3, o3});
  out.complex_legendrian = out.complex_legendrian_residual < tol;
  return out;
}

std::string catalog_label(CatalogName name) {
  switch (name) {
    case CatalogName::A1:
      return "A1";
    case CatalogName::P1:
      return "P1";
    case CatalogName::P2:
      return "P2";
  }
  return "?";
}

ParamMap3 catalog(CatalogName name, const ConventionSet& conv) {
  constexpr double two_pi = 2 * std::numbers::pi;
  const cd I(0, 1);
  ParamMap3 out;
  switch (name) {
    case CatalogName::A1:
      out.map = [conv, I](const Eigen::Vector3d& u) {
        Vec4c c(std::exp(I * u(0)), std::exp(I * u(1)), std::exp(I * u(2)), std::exp(-I * (u(0) + u(1) + u(2))));
        return from_c4(0.5 * c, conv);
      };
      out.lower = Eigen::Vector3d::Zero();
      out.upper = Eigen::Vector3d::Constant(two_pi);
      break;
    case CatalogName::P1:
    case CatalogName::P2: {
      const int second = name == CatalogName::P1 ? 1 : 2;
      out.map = [conv, I, second](const Eigen::Vector3d& u) {
        Vec4c c = Vec4c::Zero();
        c(0) = std::cos(u(0)) * std::exp(I * u(1));
        c(second) = std::sin(u(0)) * std::exp(I * u(2));
        return from_c4(c, conv);
      };
      out.lower = Eigen::Vector3d(0.1, 0, 0);
      out.upper = Eigen::Vector3d(std::numbers::pi / 2 - 0.1, two_pi, two_pi);
      break;
    }
  }
  return out;
}

Tangent3 tangent_by_differences(const std::function<Vec8(const Eigen::Vector3d&)>& map, const Eigen::Vector3d& u,
                                double h) {
  const Vec8 x = map(u).normalized();
  Tangent3 T;
  for (int i = 0; i < 3; ++i) {
    auto diff = [&](double step) {
      Eigen::Vector3d up = u, um = u;
      up(i) += step;
      um(i) -= step;
      return Vec8((map(up) - map(um)) / (2 * step));
    };
    const Vec8 d = (4.0 * diff(h / 2) - diff(h)) / 3.0;
    T.col(i) = d - x.dot(d) * x;
  }
  return T;
}

}  // namespace hopf
