#include "hopf/curves.hpp"

#include <sstream>
#include <stdexcept>

namespace hopf {

Polynomial::Polynomial(std::vector<cd> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(cd(0));
}

cd Polynomial::operator()(cd z) const {
  cd acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({cd(0)});
  std::vector<cd> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<cd> out(c_.size() + o.c_.size() - 1, cd(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<cd> out(std::max(c_.size(), o.c_.size()), cd(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
  return Polynomial(std::move(out));
}

int Polynomial::degree() const {
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
    if (c_[k] != cd(0)) return k;
  return -1;
}

Rational::Rational(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
  if (den.degree() < 0) throw std::invalid_argument("rational function with zero denominator");
}

cd Rational::operator()(cd z) const { return num(z) / den(z); }

Rational Rational::derivative() const {
  return Rational(num.derivative() * den - num * den.derivative(), den * den);
}

bool Rational::is_pole(cd z, double tol) const { return std::abs(den(z)) < tol; }

bool Rational::is_constant() const {
  return (num.derivative() * den - num * den.derivative()).degree() < 0;
}

RationalPair::RationalPair(Rational f_, Rational g_) : f(std::move(f_)), g(std::move(g_)) {
  if (g.is_constant()) throw std::invalid_argument("g must be non-constant");
}

CurvePoint bryant_curve(const RationalPair& pair, cd z) {
  std::ostringstream why;
  if (pair.f.is_pole(z)) why << "pole of f ";
  if (pair.g.is_pole(z)) why << "pole of g ";
  const Rational df = pair.f.derivative(), dg = pair.g.derivative();
  const Rational d2f = df.derivative(), d2g = dg.derivative();
  const cd g1 = pair.g.is_pole(z) ? cd(0) : dg(z);
  if (!pair.g.is_pole(z) && std::abs(g1) < 1e-12) why << "critical point of g ";
  if (!why.str().empty()) {
    std::ostringstream msg;
    msg << "singular point z = " << z << ": " << why.str();
    throw std::domain_error(msg.str());
  }
  const cd f0 = pair.f(z), g0 = pair.g(z), f1 = df(z), f2 = d2f(z), g2 = d2g(z);
  const cd h = f1 / g1;
  const cd h1 = (f2 * g1 - f1 * g2) / (g1 * g1);
  CurvePoint out;
  out.value << cd(1), f0 - 0.5 * g0 * h, g0, 0.5 * h;
  out.derivative << cd(0), 0.5 * f1 - 0.5 * g0 * h1, g1, 0.5 * h1;
  return out;
}

DirectrixCurve::DirectrixCurve(RawFn raw, RawFn raw_derivative, std::vector<cd> singular, std::string label)
    : raw_(std::move(raw)), raw_derivative_(std::move(raw_derivative)), singular_(std::move(singular)),
      label_(std::move(label)) {}

DirectrixCurve DirectrixCurve::from_pair(const RationalPair& pair, std::string label) {
  return DirectrixCurve([pair](cd z) { return bryant_curve(pair, z).value; },
                        [pair](cd z) { return bryant_curve(pair, z).derivative; }, {}, std::move(label));
}

DirectrixCurve DirectrixCurve::constant(const Vec4c& c) {
  return DirectrixCurve([c](cd) { return c; }, [](cd) { return Vec4c(Vec4c::Zero()); }, {}, "constant");
}

Vec4c DirectrixCurve::raw(cd z) const {
  if (is_singular(z)) throw std::domain_error("directrix evaluated at a singular point");
  return raw_(z);
}

Vec4c DirectrixCurve::raw_derivative(cd z) const {
  if (is_singular(z)) throw std::domain_error("directrix evaluated at a singular point");
  return raw_derivative_(z);
}

Vec4c DirectrixCurve::lift(cd z) const {
  Vec4c c = raw(z);
  const double n = c.norm();
  if (!(n > 0)) throw std::domain_error("directrix vanishes");
  c /= n;
  for (int k = 0; k < 4; ++k)
    if (std::abs(c(k)) > 1e-6) {
      c *= std::conj(c(k)) / std::abs(c(k));
      break;
    }
  return c;
}

bool DirectrixCurve::is_singular(cd z, double tol) const {
  for (const cd& s : singular_)
    if (std::abs(z - s) < tol) return true;
  return false;
}

DirectrixCurve veronese_directrix() {
  const RationalPair pair(Rational::polynomial({0, 0, 0, 2}), Rational::polynomial({0, 1}));
  return DirectrixCurve::from_pair(pair, "veronese");
}

double horizontality_residual(const Vec4c& c, const Vec4c& dc, const ConventionSet& conv) {
  const double nd = dc.norm();
  if (!(nd > 1e-14)) throw std::domain_error("stationary point");
  cd form;
  if (conv.pairing == ContactPairing::Adjacent)
    form = c(0) * dc(1) - c(1) * dc(0) + c(2) * dc(3) - c(3) * dc(2);
  else
    form = c(0) * dc(2) - c(2) * dc(0) + c(1) * dc(3) - c(3) * dc(1);
  return std::abs(form) / (c.norm() * nd);
}

double horizontality_residual(const DirectrixCurve& curve, cd z, const ConventionSet& conv) {
  return horizontality_residual(curve.raw(z), curve.raw_derivative(z), conv);
}

namespace {

template <typename T, typename Fn>
std::pair<T, T> partials(const Fn& map, cd z, double h) {
  const cd I(0, 1);
  auto d = [&](cd dir, double step) -> T { return (map(z + step * dir) - map(z - step * dir)) / (2 * step); };
  const T dx = (4.0 * d(1.0, h / 2) - d(1.0, h)) / 3.0;
  const T dy = (4.0 * d(I, h / 2) - d(I, h)) / 3.0;
  return {dx, dy};
}

}  // namespace

double cr_residual(const std::function<cd(cd)>& map, cd z, double h) {
  const auto [dx, dy] = partials<cd>(map, z, h);
  return std::abs(dx + cd(0, 1) * dy);
}

double cr_residual(const std::function<Eigen::VectorXcd(cd)>& map, cd z, double h) {
  const auto [dx, dy] = partials<Eigen::VectorXcd>(map, z, h);
  return (dx + cd(0, 1) * dy).norm();
}

double sphere_cr_residual(const std::function<Eigen::Vector3d(cd)>& map, cd z, double h) {
  const auto [dx, dy] = partials<Eigen::Vector3d>(map, z, h);
  return (dy + map(z).cross(dx)).norm();
}

Eigen::Vector3d inverse_stereographic(cd R) { return inverse_stereographic(R, cd(1)); }

Eigen::Vector3d inverse_stereographic(cd num, cd den) {
  if (std::abs(num) <= std::abs(den)) {
    const cd R = num / den;
    const double s = std::norm(R);
    return Eigen::Vector3d(2 * R.real(), 2 * R.imag(), s - 1) / (1 + s);
  }
  const cd u = den / num;
  const double s = std::norm(u);
  return Eigen::Vector3d(2 * u.real(), -2 * u.imag(), 1 - s) / (1 + s);
}

RulingMap::RulingMap(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}

RulingMap RulingMap::constant(const Eigen::Vector3d& w) {
  const Eigen::Vector3d u = RulingDirection(w).w;
  return RulingMap([u](cd) { return u; }, "constant");
}

RulingMap RulingMap::from_rational(const Rational& R) {
  return RulingMap([R](cd z) { return inverse_stereographic(R.num(z), R.den(z)); }, "holomorphic");
}

RulingMap RulingMap::anti_holomorphic(const Rational& R) {
  return RulingMap([R](cd z) { return inverse_stereographic(R.num(std::conj(z)), R.den(std::conj(z))); },
                   "anti-holomorphic");
}

RulingDirection ruling_from_rational(const Rational& R, cd z) {
  return RulingDirection(inverse_stereographic(R.num(z), R.den(z)));
}

}  // namespace hopf
