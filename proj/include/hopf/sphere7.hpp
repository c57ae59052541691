#ifndef HOPF_SPHERE7_HPP_
#define HOPF_SPHERE7_HPP_

#include "hopf/exterior.hpp"
#include "hopf/g2core.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace hopf {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Frame8 = Eigen::Matrix<double, 8, 7>;
using Tangent3 = Eigen::Matrix<double, 8, 3>;
using Vec4c = Eigen::Vector4cd;
using cd = std::complex<double>;

enum class MultSide { Right, Left };
enum class ContactPairing { Adjacent, Interleaved };

// The quaternionic conventions that the construction leaves open. Default members hold the
// combination selected by convention_calibration().
struct ConventionSet {
  MultSide side = MultSide::Right;
  int reeb_sign = -1;
  ContactPairing pairing = ContactPairing::Adjacent;
  int phi_sign = 1;

  std::string str() const;
  static ConventionSet parse(const std::string& text);
  static std::vector<ConventionSet> all();
  friend bool operator==(const ConventionSet&, const ConventionSet&) = default;
};

struct SquashParams {
  double a = 1.0;
  double b = 1.0;
  SquashParams() = default;
  SquashParams(double a_, double b_);
  // Weights of the g_{a,b}-orthonormal coframe (a alpha, b beta).
  MetricDiagd weights() const;
};

struct RulingDirection {
  Eigen::Vector3d w;
  explicit RulingDirection(const Eigen::Vector3d& v);
  Eigen::Quaterniond hat() const;
};

struct SasakianPoint {
  Vec8 x;
  Eigen::Matrix<double, 8, 3> reeb;
  Eigen::Matrix<double, 8, 4> cframe;

  // Columns A1, A2, A3, c1..c4; orthonormal for the round metric.
  Frame8 frame() const;
  // Rows alpha1..3, beta1..4 as covectors on R^8.
  Eigen::Matrix<double, 7, 8> coframe() const { return frame().transpose(); }
  // Orthogonal projector onto C.
  Mat8 c_projector() const { return cframe * cframe.transpose(); }
};

// Quaternion slots of R^8 = H^2, each stored as (re, i, j, k).
Eigen::Quaterniond slot(const Vec8& x, int s);
void set_slot(Vec8& x, int s, const Eigen::Quaterniond& q);
Vec8 right_mul(const Vec8& x, const Eigen::Quaterniond& q);
Vec8 left_mul(const Eigen::Quaterniond& q, const Vec8& x);
// Scalar action of a unit quaternion on the side fixed by the convention.
Vec8 sp1_act(const Vec8& x, const Eigen::Quaterniond& q, const ConventionSet& conv);
Eigen::Quaterniond imag_quat(const Eigen::Vector3d& w);
Eigen::Quaterniond quat_exp(const Eigen::Quaterniond& imaginary);
// Unit q with conj(q) a q = b for unit imaginary a, b (undefined at b = -a).
Eigen::Quaterniond rotor_between(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);
// Unit q with conj(q) i q = w-hat, equal to 1 at w = (1,0,0) and smooth away from w = (0,0,1).
Eigen::Quaterniond ruling_rotor(const Eigen::Vector3d& w);

// C^4 <-> H^2. Complex scalar multiplication becomes the first complex structure I_1.
Vec8 from_c4(const Vec4c& c, const ConventionSet& conv = {});
Vec4c to_c4(const Vec8& x, const ConventionSet& conv = {});

// I_p(v) for p in {0,1,2}; I_w = sum w_p I_p.
Vec8 complex_structure(const Vec8& v, int p, const ConventionSet& conv = {});
Vec8 complex_structure(const Vec8& v, const Eigen::Vector3d& w, const ConventionSet& conv = {});
Mat8 complex_structure_matrix(int p, const ConventionSet& conv = {});

SasakianPoint sasakian_frame(const Vec8& x, const ConventionSet& conv = {});

// Components of phi_{a,b}, psi_{a,b}, Gamma_1, Gamma_2 in the adapted coframe, read from the
// frame-independent ambient expressions.
KFormd phi_ab_at(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv = {});
KFormd psi_ab_at(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv = {});
KFormd gamma1_at(const SasakianPoint& pt, const ConventionSet& conv = {});
KFormd gamma2_at(const SasakianPoint& pt, const ConventionSet& conv = {});
// The same forms on R^8 (only their restriction to T_x S^7 is meaningful).
KFormd phi_ambient(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv = {});
KFormd psi_ambient(const SasakianPoint& pt, const SquashParams& p, const ConventionSet& conv = {});
KFormd gamma1_ambient(const SasakianPoint& pt, const ConventionSet& conv = {});

// g_{a,b} as a quadratic form on R^8 restricted to T_x S^7.
Mat8 gab_matrix(const SasakianPoint& pt, const SquashParams& p);

// Signed value phi_{a,b}(T)/vol_{g_{a,b}}(T) for a tangent 3-frame T at pt.
double normalized_phi_value(const SasakianPoint& pt, const Tangent3& T, const SquashParams& p,
                            const ConventionSet& conv = {});
// 1 - |normalized value|, the defect with the orientation that minimizes it.
double calibration_defect(const SasakianPoint& pt, const Tangent3& T, const SquashParams& p,
                          const ConventionSet& conv = {});
// g_{a,b}-orthonormal coframe coordinates (a alpha, b beta) of tangent vectors.
Eigen::Matrix<double, 7, 3> to_flat_model(const SasakianPoint& pt, const Tangent3& T, const SquashParams& p);

// Stereographic chart of S^7 centred at `center`, singular at -center.
class StereoChart {
 public:
  explicit StereoChart(const Vec8& center);
  Vec8 point(const Eigen::Matrix<double, 7, 1>& y) const;
  Eigen::Matrix<double, 8, 7> jacobian(const Eigen::Matrix<double, 7, 1>& y) const;
  Eigen::Matrix<double, 7, 1> coordinates(const Vec8& x) const;
  double distance_to_singular_point(const Eigen::Matrix<double, 7, 1>& y) const;
  const Vec8& center() const { return center_; }
  const Eigen::Matrix<double, 8, 7>& basis() const { return basis_; }

  static constexpr double kExclusionRadius = 0.2;

 private:
  Vec8 center_;
  Eigen::Matrix<double, 8, 7> basis_;
};

// Pulls a field of coframe components back to chart coordinates.
FormFieldd chart_field(const StereoChart& chart, int degree,
                       std::function<KFormd(const SasakianPoint&)> coframe_form, const ConventionSet& conv = {});

// Converts a chart form at the chart centre to components in the adapted coframe there.
KFormd chart_to_coframe(const StereoChart& chart, const KFormd& form, const SasakianPoint& pt);

// |d * phi_{a,b}| at x; epsilon adds a non-coclosed perturbation for detector checks.
double coclosed_residual(const SquashParams& p, const Vec8& x, double h = 1e-3, const ConventionSet& conv = {},
                         double epsilon = 0.0);

struct TorsionFit {
  double coeff_psi;
  double coeff_gamma1;
  double residual;
  double expected_psi;
  double expected_gamma1;
};
TorsionFit torsion_check(const SquashParams& p, const Vec8& x, double h = 1e-3, const ConventionSet& conv = {});
double expected_torsion_psi(const SquashParams& p);
double expected_torsion_gamma1(const SquashParams& p);

// Quaternionic Hopf map to S^4 in R^5.
Eigen::Matrix<double, 5, 1> hopf_h(const Vec8& x, const ConventionSet& conv = {});
// Fibre map of the circle action generated by w; a representative in C^4 of the CP^3 point.
Vec4c hopf_pw(const Vec8& x, const RulingDirection& w, const ConventionSet& conv = {});
double cp3_distance(const Vec4c& a, const Vec4c& b);
// The Reeb orbit through m in direction w, unit speed.
Vec8 hopf_circle(const Vec8& m, const RulingDirection& w, double t, const ConventionSet& conv = {});
Vec8 hopf_circle_velocity(const Vec8& m, const RulingDirection& w, double t, const ConventionSet& conv = {});

// The almost complex structure J_w on ker(alpha_w) under which CR and special Legendrian 3-folds are
// phi-associative: I_w on C and -I_w on A (so J_w A_{w2} = -A_{w3}), zero on A_w.
Vec8 contact_structure(const SasakianPoint& pt, const Vec8& v, const Eigen::Vector3d& w, const ConventionSet& conv = {});
// The (3,0)-form Upsilon_w of J_w on ker(alpha_w), normalized so that Re Upsilon_w = phi_{1,1} there.
cd complex_volume(const SasakianPoint& pt, const Tangent3& U, const Eigen::Vector3d& w, const ConventionSet& conv = {});

struct CRProfile {
  bool cr = false;
  bool legendrian = false;
  bool special_legendrian = false;
  bool complex_legendrian = false;
  double reeb_distance = 0;    // distance of A_w from P
  double j_invariance = 0;     // failure of J_w-invariance of P n ker(alpha_w)
  double alpha_restriction = 0;
  double omega_restriction = 0;
  double re_upsilon = 0;
  double im_upsilon = 0;
  double complex_legendrian_residual = 0;
  // The same tests for the flat Kaehler structure I_w of the cone: Legendrian residual and the
  // standard holomorphic volume form on (x, P).
  bool kahler_legendrian = false;
  double kahler_alpha_omega = 0;
  cd kahler_upsilon{0};
};
CRProfile cr_legendrian_profile(const SasakianPoint& pt, const Tangent3& P, const Eigen::Vector3d& w,
                                const ConventionSet& conv = {}, double tol = 1e-8);

enum class CatalogName { A1, P1, P2 };
std::string catalog_label(CatalogName name);

struct ParamMap3 {
  std::function<Vec8(const Eigen::Vector3d&)> map;
  Eigen::Vector3d lower;
  Eigen::Vector3d upper;
};
ParamMap3 catalog(CatalogName name, const ConventionSet& conv = {});

// Tangent vectors by Richardson central differences, projected tangent to S^7.
Tangent3 tangent_by_differences(const std::function<Vec8(const Eigen::Vector3d&)>& map, const Eigen::Vector3d& u,
                                double h = 1e-3);

}  // namespace hopf

#endif  // HOPF_SPHERE7_HPP_
