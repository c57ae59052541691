#ifndef HOPF_G2CORE_HPP_
#define HOPF_G2CORE_HPP_

#include "hopf/exterior.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hopf {

template <typename Scalar>
using Matrix7 = Eigen::Matrix<Scalar, 7, 7>;
template <typename Scalar>
using Plane7 = Eigen::Matrix<Scalar, 7, 3>;

template <typename Scalar>
struct G2Structure {
  KForm<Scalar> phi;
  Matrix7<Scalar> metric;
  Scalar volume_factor;  // vol = orientation * volume_factor * e^{1...7}
  int orientation;       // +1 when phi induces the fixed orientation e^{1...7}
};

template <typename Scalar>
struct JordanProfile {
  Scalar s;
  Scalar r;
};

class NotAssociative : public std::domain_error {
 public:
  NotAssociative(const std::string& what, double defect) : std::domain_error(what), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

template <typename Scalar>
KForm<Scalar> standard_phi() {
  KForm<Scalar> phi(7, 3);
  phi.set({1, 2, 3}, Scalar(1));
  phi.set({1, 4, 5}, Scalar(1));
  phi.set({1, 6, 7}, Scalar(1));
  phi.set({2, 4, 6}, Scalar(1));
  phi.set({2, 5, 7}, Scalar(-1));
  phi.set({3, 4, 7}, Scalar(-1));
  phi.set({3, 5, 6}, Scalar(-1));
  return phi;
}

// B(u,v) = (1/6) (i_u phi ^ i_v phi ^ phi) / e^{1..7} on basis pairs.
template <typename Scalar>
Matrix7<Scalar> phi_bilinear(const KForm<Scalar>& phi) {
  if (phi.dim() != 7 || phi.degree() != 3) throw std::invalid_argument("expected a 3-form on R^7");
  std::array<KForm<Scalar>, 7> contracted;
  for (int i = 0; i < 7; ++i) contracted[i] = interior(Eigen::Matrix<Scalar, 7, 1>::Unit(i), phi);
  const MultiIndex top(static_cast<std::uint16_t>(0x7f));
  Matrix7<Scalar> B;
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      B(i, j) = wedge(wedge(contracted[i], contracted[j]), phi).coeff(top) / Scalar(6);
      B(j, i) = B(i, j);
    }
  return B;
}

// Solves g vol = B for positive-definite g; empty when B is not definite.
template <typename Scalar>
std::optional<G2Structure<Scalar>> metric_from_phi(const KForm<Scalar>& phi) {
  const Matrix7<Scalar> B = phi_bilinear(phi);
  Eigen::SelfAdjointEigenSolver<Matrix7<Scalar>> eig(B);
  const auto ev = eig.eigenvalues();
  const Scalar scale = ev.cwiseAbs().maxCoeff();
  if (!(scale > Scalar(0))) return std::nullopt;
  const Scalar tol = scale * Scalar(1e-10);
  int orientation = 0;
  if (ev.minCoeff() > tol)
    orientation = 1;
  else if (ev.maxCoeff() < -tol)
    orientation = -1;
  else
    return std::nullopt;
  const Matrix7<Scalar> Bpos = Scalar(orientation) * B;
  // det(B) = det(g)^{9/2}
  const Scalar detg = std::pow(Bpos.determinant(), Scalar(2) / Scalar(9));
  const Scalar volume_factor = std::sqrt(detg);
  G2Structure<Scalar> out{phi, Bpos / volume_factor, volume_factor, orientation};
  return out;
}

// Gram-Schmidt against a symmetric positive-definite metric, preserving orientation of the span.
template <typename Scalar, int N, int K>
Eigen::Matrix<Scalar, N, K> orthonormalize(const Eigen::Matrix<Scalar, N, K>& basis,
                                           const Eigen::Matrix<Scalar, N, N>& metric) {
  Eigen::Matrix<Scalar, N, K> out = basis;
  for (int j = 0; j < basis.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) out.col(j) -= (out.col(i).dot(metric * out.col(j))) * out.col(i);
    const Scalar n = std::sqrt(out.col(j).dot(metric * out.col(j)));
    if (!(n > Scalar(0))) throw std::invalid_argument("rank-deficient basis");
    out.col(j) /= n;
  }
  return out;
}

// phi(u1,u2,u3) / vol_g(u1,u2,u3): the comass-normalized value on an oriented 3-plane.
template <typename Scalar, int N>
Scalar normalized_phi(const KForm<Scalar>& phi, const Eigen::Matrix<Scalar, N, 3>& basis,
                      const Eigen::Matrix<Scalar, N, N>& metric) {
  const Eigen::Matrix<Scalar, 3, 3> gram = basis.transpose() * metric * basis;
  const Scalar det = gram.determinant();
  if (!(det > Scalar(0))) throw std::invalid_argument("rank-deficient basis");
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> b = basis;
  return phi(b) / std::sqrt(det);
}

template <typename Scalar>
Scalar normalized_phi(const KForm<Scalar>& phi, const Plane7<Scalar>& basis) {
  return normalized_phi<Scalar, 7>(phi, basis, Matrix7<Scalar>::Identity());
}

// 1 - phi on the oriented, orthonormalized plane; 0 exactly for associative planes.
template <typename Scalar>
Scalar associativity_defect(const KForm<Scalar>& phi, const Plane7<Scalar>& basis) {
  return Scalar(1) - normalized_phi(phi, basis);
}

template <typename Scalar>
bool is_associative(const KForm<Scalar>& phi, const Plane7<Scalar>& basis, Scalar tol = Scalar(1e-8)) {
  return std::abs(associativity_defect(phi, basis)) < tol;
}

template <typename Scalar>
Plane7<Scalar> distinguished_plane() {
  Plane7<Scalar> A = Plane7<Scalar>::Zero();
  A(0, 0) = A(1, 1) = A(2, 2) = Scalar(1);
  return A;
}

template <typename Scalar>
bool in_orbit_triangle(Scalar s, Scalar r, Scalar tol = Scalar(1e-12)) {
  return s >= -tol && Scalar(3) * s <= r + tol && r <= std::numbers::pi_v<Scalar> / Scalar(2) + tol;
}

template <typename Scalar>
Plane7<Scalar> build_normal_form(const JordanProfile<Scalar>& p) {
  const Scalar s = p.s, r = p.r;
  if (!in_orbit_triangle(s, r)) {
    std::ostringstream msg;
    msg << "(s, r) = (" << s << ", " << r << ") lies outside the orbit triangle";
    throw std::invalid_argument(msg.str());
  }
  Plane7<Scalar> P = Plane7<Scalar>::Zero();
  P(0, 0) = std::cos(Scalar(2) * s);
  P(5, 0) = std::sin(Scalar(2) * s);
  P(1, 1) = std::cos(s - r);
  P(4, 1) = std::sin(s - r);
  P(2, 2) = std::cos(s + r);
  P(3, 2) = std::sin(s + r);
  return P;
}

template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, 3> orthonormal_basis(const Eigen::Matrix<Scalar, N, 3>& E) {
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, N, 3>> svd(E, Eigen::ComputeFullU);
  const auto sv = svd.singularValues();
  if (!(sv(2) > sv(0) * Scalar(1e-12)) || !(sv(0) > Scalar(0))) throw std::invalid_argument("rank-deficient plane");
  return svd.matrixU().template leftCols<3>();
}

// Principal angles, ascending, using sines for small angles and cosines for large ones.
template <typename Scalar, int N>
std::array<Scalar, 3> principal_angles(const Eigen::Matrix<Scalar, N, 3>& E, const Eigen::Matrix<Scalar, N, 3>& F) {
  const Eigen::Matrix<Scalar, N, 3> QE = orthonormal_basis<Scalar, N>(E);
  const Eigen::Matrix<Scalar, N, 3> QF = orthonormal_basis<Scalar, N>(F);
  const Eigen::Matrix<Scalar, 3, 3> C = QE.transpose() * QF;
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, 3, 3>> svc(C);
  const Eigen::Matrix<Scalar, N, 3> R = QF - QE * C;
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, N, 3>> svs(R);
  const auto cosv = svc.singularValues();  // descending
  const auto sinv = svs.singularValues();  // descending
  std::array<Scalar, 3> out{};
  for (int k = 0; k < 3; ++k) {
    const Scalar c = std::clamp(cosv(k), Scalar(0), Scalar(1));
    const Scalar s = std::clamp(sinv(2 - k), Scalar(0), Scalar(1));
    out[k] = (c * c >= Scalar(0.5)) ? std::asin(s) : std::acos(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Scalar>
std::array<Scalar, 3> normal_form_angles(Scalar s, Scalar r) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  std::array<Scalar, 3> a{Scalar(2) * s, r - s, std::min(r + s, pi - (r + s))};
  std::sort(a.begin(), a.end());
  return a;
}

// Recovers (s, r) by testing each assignment of the measured angles to (2s, r - s, third),
// then confirming against the angles of the rebuilt normal form.
template <typename Scalar>
JordanProfile<Scalar> profile_from_angles(const std::array<Scalar, 3>& theta) {
  const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
  JordanProfile<Scalar> best{Scalar(0), Scalar(0)};
  Scalar best_err = std::numeric_limits<Scalar>::infinity();
  std::array<int, 3> perm{0, 1, 2};
  do {
    Scalar s = theta[perm[0]] / Scalar(2);
    Scalar r = theta[perm[1]] + s;
    s = std::clamp(s, Scalar(0), std::numbers::pi_v<Scalar> / Scalar(6));
    r = std::clamp(r, Scalar(3) * s, half_pi);
    const auto rebuilt = principal_angles<Scalar, 7>(build_normal_form<Scalar>({s, r}), distinguished_plane<Scalar>());
    Scalar err(0);
    for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(rebuilt[k] - theta[k]));
    if (err < best_err) {
      best_err = err;
      best = {s, r};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

template <typename Scalar>
JordanProfile<Scalar> jordan_profile(const Plane7<Scalar>& P, Scalar tol = Scalar(1e-8)) {
  const Scalar defect = associativity_defect(standard_phi<Scalar>(), P);
  if (!(std::abs(defect) < tol)) {
    std::ostringstream msg;
    msg << "plane is not associative (defect " << defect << ")";
    throw NotAssociative(msg.str(), static_cast<double>(defect));
  }
  return profile_from_angles(principal_angles<Scalar, 7>(P, distinguished_plane<Scalar>()));
}

template <typename Scalar>
struct StripedResult {
  bool striped;
  JordanProfile<Scalar> profile;
};

template <typename Scalar>
StripedResult<Scalar> is_striped_point(const Plane7<Scalar>& P, Scalar tol_s = Scalar(1e-6),
                                       Scalar tol_r = Scalar(1e-3), Scalar assoc_tol = Scalar(1e-8)) {
  const auto p = jordan_profile(P, assoc_tol);
  return {p.s < tol_s && p.r > tol_r, p};
}

using G2Structured = G2Structure<double>;
using JordanProfiled = JordanProfile<double>;
using Plane7d = Plane7<double>;
using Matrix7d = Matrix7<double>;

}  // namespace hopf

#endif  // HOPF_G2CORE_HPP_
