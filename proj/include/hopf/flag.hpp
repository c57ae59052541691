#ifndef HOPF_FLAG_HPP_
#define HOPF_FLAG_HPP_

#include "hopf/curves.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <random>

namespace hopf {

using SU3 = Eigen::Matrix3cd;

// max(|g^H g - I|, |det g - 1|)
double su3_defect(const SU3& g);
bool is_su3(const SU3& g, double tol = 1e-10);

struct MCComponents {
  double kappa = 0;
  double psi = 0;
  cd eta1{0}, eta2{0}, eta3{0};
};

// Lie algebra element in the Maurer-Cartan layout.
Eigen::Matrix3cd assemble_mc(const MCComponents& c);
// Inverse of assemble_mc; throws std::invalid_argument if gamma is not in su(3) to tol.
MCComponents read_mc(const Eigen::Matrix3cd& gamma, double tol = 1e-8);
// Components of g^{-1} gdot for a tangent vector gdot at g.
MCComponents mc_components(const SU3& g, const Eigen::Matrix3cd& gdot, double tol = 1e-8);

using SU3Family = std::function<SU3(double s, double t)>;

// Residual magnitudes of the five structure equations, ordered eta1, eta2, eta3, kappa, psi,
// on the coordinate bivector (d/ds, d/dt). `corrupt` in [0,5) flips the sign of one quadratic term.
std::array<double, 5> su3_structure_residual(const SU3Family& family, double s, double t, double h = 1e-4,
                                             int corrupt = -1);

Eigen::Matrix3cd random_su3_algebra(std::mt19937_64& rng);
SU3Family exponential_family(const Eigen::Matrix3cd& X, const Eigen::Matrix3cd& Y);
SU3Family product_family(const Eigen::Matrix3cd& X, const Eigen::Matrix3cd& Y);

// Holomorphic curve in CP^2 given by three polynomials.
struct PlaneCurve {
  std::array<Polynomial, 3> components;
  Eigen::Vector3cd value(cd z) const;
  Eigen::Vector3cd derivative(cd z, int order) const;
};

PlaneCurve rational_normal_curve();

// Frenet frame of the curve, columns cyclically rotated for variants 2 and 3 so that the
// first column spans e_variant.
SU3 frenet_lift(const PlaneCurve& c, cd z, int variant = 1);

using SU3Lift = std::function<SU3(cd)>;
SU3Lift frenet_lift_fn(const PlaneCurve& c, int variant);

// (|A1|, |A2|, |A3|) of the lift along d/dx.
Eigen::Vector3d a_coefficients(const SU3Lift& lift, cd z, double h = 1e-4);
double cubic_norm(const SU3Lift& lift, cd z, double h = 1e-4);

}  // namespace hopf

#endif  // HOPF_FLAG_HPP_
