#ifndef HOPF_EXTERIOR_HPP_
#define HOPF_EXTERIOR_HPP_

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

constexpr int kMaxDim = 8;

// Strictly increasing list of axis labels, stored as a bit mask (bit i <-> axis i+1).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::uint16_t mask) : mask_(mask) {}
  MultiIndex(std::initializer_list<int> axes) {
    int last = 0;
    for (int a : axes) {
      if (a <= last || a > kMaxDim)
        throw std::invalid_argument("multi-index must be strictly increasing in 1..8");
      mask_ |= static_cast<std::uint16_t>(1u << (a - 1));
      last = a;
    }
  }

  std::uint16_t mask() const { return mask_; }
  int degree() const { return std::popcount(static_cast<unsigned>(mask_)); }
  bool contains(int axis) const { return (mask_ >> (axis - 1)) & 1u; }
  int max_axis() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(static_cast<unsigned>(mask_)); }

  // 1-based axis labels in increasing order.
  std::vector<int> axes() const {
    std::vector<int> out;
    for (int i = 0; i < kMaxDim; ++i)
      if ((mask_ >> i) & 1u) out.push_back(i + 1);
    return out;
  }

  std::string str() const {
    std::string s;
    for (int a : axes()) s += std::to_string(a);
    return s;
  }

  friend bool operator<(MultiIndex a, MultiIndex b) {
    // graded lexicographic on the sorted axis lists
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const unsigned d = static_cast<unsigned>(a.mask_ ^ b.mask_);
    if (d == 0) return false;
    return (a.mask_ & (d & (~d + 1u))) != 0;
  }
  friend bool operator==(MultiIndex a, MultiIndex b) { return a.mask_ == b.mask_; }

 private:
  std::uint16_t mask_ = 0;
};

// Sign of e^I ^ e^J for disjoint I, J relative to e^{I u J}.
inline int wedge_sign(std::uint16_t I, std::uint16_t J) {
  int swaps = 0;
  for (int j = 0; j < kMaxDim; ++j) {
    if (!((J >> j) & 1u)) continue;
    swaps += std::popcount(static_cast<unsigned>(I >> (j + 1)));
  }
  return (swaps & 1) ? -1 : 1;
}

// Diagonal metric: g = sum_i weights[i]^2 (e^i)^2, so weights are the lengths of the basis vectors.
template <typename Scalar>
struct MetricDiag {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  explicit MetricDiag(Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w) : weights(std::move(w)) {
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      if (!(weights(i) > Scalar(0))) throw std::invalid_argument("metric weights must be positive");
  }
  static MetricDiag identity(int n) {
    return MetricDiag(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Ones(n));
  }
  int dim() const { return static_cast<int>(weights.size()); }
};

template <typename Scalar>
class KForm {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Coeffs = std::map<MultiIndex, Scalar>;

  KForm() = default;
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("ambient dimension must be in 0..8");
    if (degree < 0) throw std::invalid_argument("negative degree");
  }

  static KForm zero(int dim, int degree) { return KForm(dim, degree); }
  static KForm constant(int dim, Scalar c) {
    KForm f(dim, 0);
    f.set(MultiIndex(), c);
    return f;
  }
  static KForm basis(int dim, std::initializer_list<int> axes, Scalar c = Scalar(1)) {
    MultiIndex I(axes);
    KForm f(dim, I.degree());
    f.set(I, c);
    return f;
  }
  // Covector with the given components.
  static KForm one_form(const Vector& v) {
    KForm f(static_cast<int>(v.size()), 1);
    for (Eigen::Index i = 0; i < v.size(); ++i) f.set(MultiIndex(static_cast<std::uint16_t>(1u << i)), v(i));
    return f;
  }
  // 2-form with coefficients W(i,j), i<j, from an antisymmetric matrix.
  static KForm two_form(const Matrix& W) {
    const int n = static_cast<int>(W.rows());
    KForm f(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        f.set(MultiIndex(static_cast<std::uint16_t>((1u << i) | (1u << j))), W(i, j));
    return f;
  }
  static KForm volume(int dim) {
    return KForm::from_mask(dim, static_cast<std::uint16_t>((1u << dim) - 1u), Scalar(1));
  }
  static KForm from_mask(int dim, std::uint16_t mask, Scalar c) {
    MultiIndex I(mask);
    KForm f(dim, I.degree());
    f.set(I, c);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Coeffs& coeffs() const { return coeffs_; }

  Scalar coeff(MultiIndex I) const {
    auto it = coeffs_.find(I);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }
  Scalar coeff(std::initializer_list<int> axes) const { return coeff(MultiIndex(axes)); }

  void set(MultiIndex I, Scalar c) {
    check_key(I);
    if (c == Scalar(0))
      coeffs_.erase(I);
    else
      coeffs_[I] = c;
  }
  void add(MultiIndex I, Scalar c) {
    check_key(I);
    Scalar v = coeff(I) + c;
    set(I, v);
  }

  // Evaluation on k vectors given as the columns of an n x k matrix.
  Scalar operator()(const Matrix& vectors) const {
    if (vectors.rows() != dim_ || vectors.cols() != degree_)
      throw std::invalid_argument("evaluation needs degree-many vectors of the ambient dimension");
    if (degree_ == 0) return coeff(MultiIndex());
    Scalar sum(0);
    Matrix minor(degree_, degree_);
    for (const auto& [I, c] : coeffs_) {
      const auto axes = I.axes();
      for (int r = 0; r < degree_; ++r) minor.row(r) = vectors.row(axes[r] - 1);
      sum += c * minor.determinant();
    }
    return sum;
  }

  // Euclidean norm of the coefficient vector in the standard basis (orthonormal-basis norm).
  Scalar coefficient_norm() const {
    Scalar s(0);
    for (const auto& [I, c] : coeffs_) s += c * c;
    return std::sqrt(s);
  }
  Scalar max_abs() const {
    Scalar m(0);
    for (const auto& [I, c] : coeffs_) m = std::max<Scalar>(m, std::abs(c));
    return m;
  }

  KForm& operator+=(const KForm& o) {
    check_same(o);
    for (const auto& [I, c] : o.coeffs_) add(I, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same(o);
    for (const auto& [I, c] : o.coeffs_) add(I, -c);
    return *this;
  }
  KForm& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& kv : coeffs_) kv.second *= s;
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) { return a *= Scalar(-1); }
  friend KForm operator*(Scalar s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, Scalar s) { return a *= s; }

 private:
  void check_key(MultiIndex I) const {
    if (I.degree() != degree_ || I.max_axis() > dim_)
      throw std::invalid_argument("multi-index " + I.str() + " does not fit a " + std::to_string(degree_) +
                                  "-form on R^" + std::to_string(dim_));
  }
  void check_same(const KForm& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("ambient dimension mismatch");
    if (o.degree_ != degree_) throw std::invalid_argument("degree mismatch");
  }

  int dim_ = 0;
  int degree_ = 0;
  Coeffs coeffs_;
};

template <typename Scalar>
KForm<Scalar> wedge(const KForm<Scalar>& a, const KForm<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("ambient dimension mismatch");
  KForm<Scalar> out(a.dim(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.dim()) return out;
  for (const auto& [I, x] : a.coeffs())
    for (const auto& [J, y] : b.coeffs()) {
      if (I.mask() & J.mask()) continue;
      out.add(MultiIndex(static_cast<std::uint16_t>(I.mask() | J.mask())),
              Scalar(wedge_sign(I.mask(), J.mask())) * x * y);
    }
  return out;
}

// Contraction of v into the first slot.
template <typename Scalar, typename Derived>
KForm<Scalar> interior(const Eigen::MatrixBase<Derived>& v, const KForm<Scalar>& a) {
  if (v.size() != a.dim()) throw std::invalid_argument("ambient dimension mismatch");
  if (a.degree() == 0) return KForm<Scalar>(a.dim(), 0);
  KForm<Scalar> out(a.dim(), a.degree() - 1);
  for (const auto& [I, c] : a.coeffs()) {
    int pos = 0;
    for (int axis : I.axes()) {
      const Scalar vi = v(axis - 1);
      if (vi != Scalar(0)) {
        const auto rest = static_cast<std::uint16_t>(I.mask() & ~(1u << (axis - 1)));
        out.add(MultiIndex(rest), ((pos & 1) ? Scalar(-1) : Scalar(1)) * vi * c);
      }
      ++pos;
    }
  }
  return out;
}

// Hodge star for a diagonal metric; orientation = +1 makes e^1 ^ ... ^ e^n positive.
template <typename Scalar>
KForm<Scalar> hodge(const KForm<Scalar>& a, const MetricDiag<Scalar>& g, int orientation = 1) {
  const int n = a.dim();
  if (g.dim() != n) throw std::invalid_argument("ambient dimension mismatch");
  const auto full = static_cast<std::uint16_t>((1u << n) - 1u);
  KForm<Scalar> out(n, n - a.degree());
  for (const auto& [I, c] : a.coeffs()) {
    const auto Ic = static_cast<std::uint16_t>(full & ~I.mask());
    Scalar scale(1);
    for (int i = 0; i < n; ++i) scale *= ((I.mask() >> i) & 1u) ? Scalar(1) / g.weights(i) : g.weights(i);
    out.add(MultiIndex(Ic), Scalar(orientation * wedge_sign(I.mask(), Ic)) * scale * c);
  }
  return out;
}

// Pointwise inner product induced by a diagonal metric.
template <typename Scalar>
Scalar inner(const KForm<Scalar>& a, const KForm<Scalar>& b, const MetricDiag<Scalar>& g) {
  if (a.dim() != b.dim() || a.dim() != g.dim()) throw std::invalid_argument("ambient dimension mismatch");
  if (a.degree() != b.degree()) return Scalar(0);
  Scalar s(0);
  for (const auto& [I, x] : a.coeffs()) {
    const Scalar y = b.coeff(I);
    if (y == Scalar(0)) continue;
    Scalar w(1);
    for (int axis : I.axes()) w /= g.weights(axis - 1) * g.weights(axis - 1);
    s += x * y * w;
  }
  return s;
}

template <typename Scalar>
Scalar norm(const KForm<Scalar>& a, const MetricDiag<Scalar>& g) {
  return std::sqrt(inner(a, a, g));
}

// Pullback along a linear map given by its n x m matrix (columns are images of the new basis).
template <typename Scalar>
KForm<Scalar> pullback(const KForm<Scalar>& a, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& J) {
  if (J.rows() != a.dim()) throw std::invalid_argument("ambient dimension mismatch");
  const int m = static_cast<int>(J.cols());
  const int k = a.degree();
  KForm<Scalar> out(m, k);
  if (k > m) return out;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cols(J.rows(), k);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) != k) continue;
    int c = 0;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1u) cols.col(c++) = J.col(i);
    out.set(MultiIndex(static_cast<std::uint16_t>(mask)), a(cols));
  }
  return out;
}

template <typename Scalar>
struct FormField {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  int dim = 0;
  int degree = 0;
  std::function<KForm<Scalar>(const Vector&)> eval;
  // Distance from a point to the edge of the chart domain; empty means the whole of R^m.
  std::function<Scalar(const Vector&)> boundary_distance;

  KForm<Scalar> operator()(const Vector& x) const { return eval(x); }
};

// Central difference of a form field along axis i.
template <typename Scalar>
KForm<Scalar> central_difference(const FormField<Scalar>& F, const typename FormField<Scalar>::Vector& x, int i,
                                 Scalar h) {
  auto xp = x, xm = x;
  xp(i) += h;
  xm(i) -= h;
  KForm<Scalar> d = F(xp) - F(xm);
  return d * (Scalar(1) / (Scalar(2) * h));
}

// Exterior derivative by central differences with one Richardson step over {h, h/2}.
template <typename Scalar>
KForm<Scalar> numeric_d(const FormField<Scalar>& F, const typename FormField<Scalar>::Vector& x,
                        Scalar h = Scalar(1e-3)) {
  if (!(h > Scalar(0))) throw std::invalid_argument("step must be positive");
  if (x.size() != F.dim) throw std::invalid_argument("ambient dimension mismatch");
  if (F.boundary_distance && F.boundary_distance(x) <= Scalar(2) * h)
    throw std::domain_error("numeric_d: point too close to the chart boundary");
  KForm<Scalar> out(F.dim, F.degree + 1);
  for (int i = 0; i < F.dim; ++i) {
    const KForm<Scalar> coarse = central_difference(F, x, i, h);
    const KForm<Scalar> fine = central_difference(F, x, i, h / Scalar(2));
    const KForm<Scalar> di = (Scalar(4) * fine - coarse) * (Scalar(1) / Scalar(3));
    out += wedge(KForm<Scalar>::from_mask(F.dim, static_cast<std::uint16_t>(1u << i), Scalar(1)), di);
  }
  return out;
}

using MultiIndexd = MultiIndex;
using KFormd = KForm<double>;
using MetricDiagd = MetricDiag<double>;
using FormFieldd = FormField<double>;

}  // namespace hopf

#endif  // HOPF_EXTERIOR_HPP_
