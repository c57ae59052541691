#ifndef HOPF_CURVES_HPP_
#define HOPF_CURVES_HPP_

#include "hopf/sphere7.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace hopf {

// Polynomial with ascending complex coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cd> coeffs);
  cd operator()(cd z) const;
  Polynomial derivative() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  int degree() const;  // -1 for the zero polynomial
  bool is_constant() const { return degree() <= 0; }
  const std::vector<cd>& coeffs() const { return c_; }

 private:
  std::vector<cd> c_;
};

struct Rational {
  Polynomial num{std::vector<cd>{cd(0)}};
  Polynomial den{std::vector<cd>{cd(1)}};

  Rational() = default;
  Rational(Polynomial n, Polynomial d);
  static Rational polynomial(std::vector<cd> coeffs) { return {Polynomial(std::move(coeffs)), Polynomial({cd(1)})}; }
  cd operator()(cd z) const;
  Rational derivative() const;
  bool is_pole(cd z, double tol = 1e-12) const;
  // True when the derivative numerator vanishes identically.
  bool is_constant() const;
};

struct RationalPair {
  Rational f;
  Rational g;
  RationalPair(Rational f_, Rational g_);
};

struct CurvePoint {
  Vec4c value;
  Vec4c derivative;
};

// Horizontal curve [1, f - g h/2, g, h/2] with h = df/dg.
CurvePoint bryant_curve(const RationalPair& pair, cd z);

// S^7-lift of a CP^3 curve, supplied as a holomorphic representative c(z).
class DirectrixCurve {
 public:
  using RawFn = std::function<Vec4c(cd)>;
  DirectrixCurve(RawFn raw, RawFn raw_derivative, std::vector<cd> singular = {}, std::string label = "");
  static DirectrixCurve from_pair(const RationalPair& pair, std::string label = "bryant");
  // Constant curve at a fixed C^4 vector; every point is fibre-degenerate.
  static DirectrixCurve constant(const Vec4c& c);

  Vec4c raw(cd z) const;
  Vec4c raw_derivative(cd z) const;
  // Unit lift with the first non-negligible coordinate real and positive.
  Vec4c lift(cd z) const;
  bool is_singular(cd z, double tol = 1e-9) const;
  const std::vector<cd>& singular_set() const { return singular_; }
  const std::string& label() const { return label_; }

 private:
  RawFn raw_;
  RawFn raw_derivative_;
  std::vector<cd> singular_;
  std::string label_;
};

// The twisted cubic [1, -z^3, z, 3 z^2] from (f, g) = (2 z^3, z).
DirectrixCurve veronese_directrix();

// Normalized failure of the holomorphic contact condition; pairing from the convention set.
double horizontality_residual(const DirectrixCurve& curve, cd z, const ConventionSet& conv = {});
double horizontality_residual(const Vec4c& c, const Vec4c& dc, const ConventionSet& conv = {});

// |d/dx + i d/dy| of a complex-valued map, by central differences.
double cr_residual(const std::function<cd(cd)>& map, cd z, double h = 1e-4);
double cr_residual(const std::function<Eigen::VectorXcd(cd)>& map, cd z, double h = 1e-4);
// For maps into the unit sphere of R^3 with the orientation in which inverse stereographic
// projection is holomorphic: |d_y w + w x d_x w|.
double sphere_cr_residual(const std::function<Eigen::Vector3d(cd)>& map, cd z, double h = 1e-4);

Eigen::Vector3d inverse_stereographic(cd R);
// Inverse stereographic image of num/den, continuous through zeros of den.
Eigen::Vector3d inverse_stereographic(cd num, cd den);

class RulingMap {
 public:
  using Fn = std::function<Eigen::Vector3d(cd)>;
  RulingMap(Fn fn, std::string label);
  static RulingMap constant(const Eigen::Vector3d& w);
  static RulingMap from_rational(const Rational& R);
  // z -> inverse stereographic image of R(conj z); not holomorphic.
  static RulingMap anti_holomorphic(const Rational& R);

  RulingDirection operator()(cd z) const { return RulingDirection(fn_(z)); }
  Eigen::Vector3d vector(cd z) const { return fn_(z); }
  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

RulingDirection ruling_from_rational(const Rational& R, cd z);

}  // namespace hopf

#endif  // HOPF_CURVES_HPP_
