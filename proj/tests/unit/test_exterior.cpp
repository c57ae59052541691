#include "doctest.h"
#include "hopf/exterior.hpp"
#include "hopf/g2core.hpp"
#include "oracles.hpp"

#include <random>

using namespace hopf;

namespace {

KFormd random_form(int n, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  KFormd f(n, k);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == k) f.set(MultiIndex(static_cast<std::uint16_t>(mask)), g(rng));
  return f;
}

oracle::Tensor to_tensor(const KFormd& f) {
  std::map<std::vector<int>, double> comps;
  for (const auto& [I, c] : f.coeffs()) {
    std::vector<int> idx;
    for (int a : I.axes()) idx.push_back(a - 1);
    comps[idx] = c;
  }
  return oracle::expand(f.dim(), f.degree(), comps);
}

double max_diff(const KFormd& a, const KFormd& b) { return (a - b).max_abs(); }

// Polynomial coefficient field on R^3 for numeric-d checks.
FormFieldd polynomial_field(int degree, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::pair<MultiIndex, Eigen::Matrix<double, 10, 1>>> terms;
  for (unsigned mask = 0; mask < 8; ++mask)
    if (std::popcount(mask) == degree) {
      Eigen::Matrix<double, 10, 1> c;
      for (int i = 0; i < 10; ++i) c(i) = g(rng);
      terms.emplace_back(MultiIndex(static_cast<std::uint16_t>(mask)), c);
    }
  FormFieldd F;
  F.dim = 3;
  F.degree = degree;
  F.eval = [terms, degree](const Eigen::VectorXd& x) {
    // cubic polynomial in x: monomials 1, x, y, z, xy, yz, zx, x^2 y, y^3, xyz
    Eigen::Matrix<double, 10, 1> m;
    m << 1, x(0), x(1), x(2), x(0) * x(1), x(1) * x(2), x(2) * x(0), x(0) * x(0) * x(1), x(1) * x(1) * x(1),
        x(0) * x(1) * x(2);
    KFormd out(3, degree);
    for (const auto& [I, c] : terms) out.set(I, c.dot(m));
    return out;
  };
  return F;
}

}  // namespace

TEST_SUITE("exterior") {
  TEST_CASE("multi-index validation") {
    CHECK_THROWS_AS(MultiIndex({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({0, 1}), std::invalid_argument);
    CHECK(MultiIndex({1, 3, 5}).degree() == 3);
    KFormd f(3, 2);
    CHECK_THROWS_AS(f.set(MultiIndex({1, 4}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f.set(MultiIndex({1}), 1.0), std::invalid_argument);
  }

  TEST_CASE("wedge basis cases") {
    const auto e1 = KFormd::basis(7, {1}), e2 = KFormd::basis(7, {2});
    const KFormd e12 = wedge(e1, e2);
    CHECK(e12.coeff({1, 2}) == 1.0);
    CHECK(e12.coeffs().size() == 1);
    CHECK(wedge(e1, e1).coeffs().empty());
    CHECK(wedge(e2, e1).coeff({1, 2}) == -1.0);
    CHECK_THROWS_WITH(wedge(KFormd::basis(3, {1}), e1), "ambient dimension mismatch");
    CHECK(wedge(KFormd::basis(3, {1, 2}), KFormd::basis(3, {2, 3})).degree() == 4);
  }

  TEST_CASE("wedge agrees with the tensor oracle and is graded-antisymmetric") {
    std::mt19937_64 rng(11);
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; k + l <= 5; ++l) {
        const KFormd a = random_form(5, k, rng), b = random_form(5, l, rng);
        const KFormd ab = wedge(a, b);
        const oracle::Tensor t = oracle::wedge(to_tensor(a), to_tensor(b));
        for (const auto& [I, c] : ab.coeffs()) {
          std::vector<int> idx;
          for (int x : I.axes()) idx.push_back(x - 1);
          CHECK(c == doctest::Approx(t.at(idx)).epsilon(1e-12));
        }
        const double sign = (k * l) % 2 ? -1.0 : 1.0;
        CHECK(max_diff(ab, sign * wedge(b, a)) < 1e-14);
      }
  }

  TEST_CASE("wedge is associative") {
    std::mt19937_64 rng(12);
    const KFormd a = random_form(7, 2, rng), b = random_form(7, 2, rng), c = random_form(7, 1, rng);
    CHECK(max_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-12);
  }

  TEST_CASE("interior product") {
    const Eigen::VectorXd v1 = Eigen::VectorXd::Unit(7, 0), v3 = Eigen::VectorXd::Unit(7, 2);
    const KFormd e12 = KFormd::basis(7, {1, 2});
    const KFormd i1 = interior(v1, e12);
    CHECK(i1.coeff({2}) == 1.0);
    CHECK(i1.coeffs().size() == 1);
    CHECK(interior(v3, e12).coeffs().empty());

    const KFormd ip = interior(v1, standard_phi<double>());
    KFormd expected(7, 2);
    expected.set({2, 3}, 1);
    expected.set({4, 5}, 1);
    expected.set({6, 7}, 1);
    CHECK(max_diff(ip, expected) == 0.0);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(7);
    for (int i = 0; i < 7; ++i) v(i) = g(rng);
    const KFormd a = random_form(7, 3, rng);
    CHECK(interior(v, interior(v, a)).max_abs() < 1e-12);
  }

  TEST_CASE("hodge star") {
    const MetricDiagd id = MetricDiagd::identity(7);
    const KFormd one = KFormd::constant(7, 1.0);
    CHECK(max_diff(hodge(one, id), KFormd::volume(7)) == 0.0);
    const KFormd s1 = hodge(KFormd::basis(7, {1}), id);
    CHECK(s1.coeff({2, 3, 4, 5, 6, 7}) == 1.0);
    CHECK(s1.coeffs().size() == 1);

    std::mt19937_64 rng(4);
    for (int k = 0; k <= 7; ++k) {
      const KFormd a = random_form(7, k, rng);
      const double sign = (k * (7 - k)) % 2 ? -1.0 : 1.0;
      CHECK(max_diff(hodge(hodge(a, id), id), sign * a) < 1e-12);
    }
    // weighted metric: isometry, and a ^ *a = |a|^2 vol_g for decomposables
    Eigen::VectorXd w(7);
    w << 0.7, 0.7, 0.7, 1.3, 1.3, 1.3, 1.3;
    const MetricDiagd g(w);
    for (int k = 1; k <= 6; ++k) {
      const KFormd a = random_form(7, k, rng);
      CHECK(norm(hodge(a, g), g) == doctest::Approx(norm(a, g)).epsilon(1e-12));
    }
    const KFormd dec = wedge(KFormd::basis(7, {1}), KFormd::basis(7, {5}));
    const double vol = w.prod();
    CHECK(wedge(dec, hodge(dec, g)).coeff({1, 2, 3, 4, 5, 6, 7}) == doctest::Approx(std::pow(norm(dec, g), 2) * vol));
  }

  TEST_CASE("phi ^ *phi = 7 vol, checked with the tensor oracle") {
    const KFormd phi = standard_phi<double>();
    const KFormd star = hodge(phi, MetricDiagd::identity(7));
    CHECK(wedge(phi, star).coeff({1, 2, 3, 4, 5, 6, 7}) == doctest::Approx(7.0));
    const oracle::Tensor t = oracle::wedge(to_tensor(phi), to_tensor(star));
    CHECK(t.at({0, 1, 2, 3, 4, 5, 6}) == doctest::Approx(7.0));
  }

  TEST_CASE("evaluation matches the tensor contraction") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    const KFormd a = random_form(6, 3, rng);
    Eigen::MatrixXd V(6, 3);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 3; ++j) V(i, j) = g(rng);
    std::vector<Eigen::VectorXd> vs{V.col(0), V.col(1), V.col(2)};
    CHECK(a(V) == doctest::Approx(oracle::evaluate(to_tensor(a), vs)).epsilon(1e-12));
  }

  TEST_CASE("pullback by a linear map") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    const KFormd a = random_form(5, 2, rng);
    Eigen::MatrixXd J(5, 3);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 3; ++j) J(i, j) = g(rng);
    const KFormd pa = pullback(a, J);
    Eigen::MatrixXd U(3, 2);
    U << 1, 2, -1, 0.5, 0.3, 1;
    CHECK(pa(U) == doctest::Approx(a(Eigen::MatrixXd(J * U))).epsilon(1e-12));
  }

  TEST_CASE("numeric d: linear field exact") {
    FormFieldd F;
    F.dim = 3;
    F.degree = 1;
    F.eval = [](const Eigen::VectorXd& x) {
      KFormd f(3, 1);
      f.set({2}, x(0));
      return f;
    };
    const Eigen::VectorXd x = Eigen::Vector3d(0.3, -0.2, 0.5);
    const KFormd d = numeric_d(F, x, 1e-3);
    CHECK(d.coeff({1, 2}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.coeffs().size() == 1);
  }

  TEST_CASE("numeric d: d^2 = 0 and Leibniz on polynomial fields") {
    const Eigen::VectorXd x = Eigen::Vector3d(0.2, -0.4, 0.7);
    for (int k = 0; k <= 1; ++k) {
      const FormFieldd F = polynomial_field(k, 20 + k);
      FormFieldd dF;
      dF.dim = 3;
      dF.degree = k + 1;
      dF.eval = [F](const Eigen::VectorXd& y) { return numeric_d(F, y, 1e-3); };
      CHECK(numeric_d(dF, x, 1e-3).max_abs() < 1e-6);
    }
    // scalar G: d(dG) = 0 to 1e-8
    const FormFieldd G = polynomial_field(0, 30);
    FormFieldd dG;
    dG.dim = 3;
    dG.degree = 1;
    dG.eval = [G](const Eigen::VectorXd& y) { return numeric_d(G, y, 1e-3); };
    CHECK(numeric_d(dG, x, 1e-3).max_abs() < 1e-8);

    const FormFieldd A = polynomial_field(1, 40), B = polynomial_field(1, 41);
    FormFieldd AB;
    AB.dim = 3;
    AB.degree = 2;
    AB.eval = [A, B](const Eigen::VectorXd& y) { return wedge(A(y), B(y)); };
    const KFormd lhs = numeric_d(AB, x);
    const KFormd rhs = wedge(numeric_d(A, x), B(x)) - wedge(A(x), numeric_d(B, x));
    CHECK(max_diff(lhs, rhs) < 1e-6);
  }

  TEST_CASE("numeric d: chart boundary and bad step") {
    FormFieldd F = polynomial_field(1, 50);
    F.boundary_distance = [](const Eigen::VectorXd& y) { return 1.0 - y.norm(); };
    CHECK_THROWS_AS(numeric_d(F, Eigen::VectorXd(Eigen::Vector3d(0.9995, 0, 0)), 1e-3), std::domain_error);
    CHECK_NOTHROW(numeric_d(F, Eigen::VectorXd(Eigen::Vector3d(0.5, 0, 0)), 1e-3));
    CHECK_THROWS_AS(numeric_d(F, Eigen::VectorXd(Eigen::Vector3d(0.5, 0, 0)), 0.0), std::invalid_argument);
  }
}
