#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "ymcyl/lie_group.hpp"
#include "ymcyl/rng.hpp"

using namespace ymcyl;

namespace {

Eigen::Matrix2cd to_eigen(const Mat2& m) {
  Eigen::Matrix2cd e;
  e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return e;
}

double dist(const Mat2& m, const Eigen::Matrix2cd& e) { return (to_eigen(m) - e).norm(); }

// Matrix exponential through the eigendecomposition.
Eigen::Matrix2cd eig_exp(const Mat2& x) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_eigen(x));
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) d(i, i) = std::exp(es.eigenvalues()(i));
  return es.eigenvectors() * d * es.eigenvectors().inverse();
}

AlgebraVector random_vector(CounterRng& rng, double scale) {
  return {{scale * rng.normal(), scale * rng.normal(), scale * rng.normal()}};
}

AlgebraVector random_in_ball(CounterRng& rng, double radius) {
  AlgebraVector v = random_vector(rng, 1.0);
  return (radius * std::cbrt(rng.uniform()) / v.norm()) * v;
}

// chi_n on SU(2) from the rotation angle; independent of the harmonic module.
double chi_angle(int n, const GroupElement& x) {
  const double c = std::clamp(x.matrix().trace().real() / 2.0, -1.0, 1.0);
  const double th = std::acos(c);
  if (std::sin(th) < 1e-12) return c > 0 ? n : ((n % 2) ? n : -n);
  return std::sin(n * th) / std::sin(th);
}

}  // namespace

TEST_CASE("basis is orthonormal for -2 tr(XY)") {
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Mat2 p = AlgebraVector::basis(a).matrix() * AlgebraVector::basis(b).matrix();
      CHECK(std::abs(-kInnerProductScale * p.trace() - (a == b ? 1.0 : 0.0)) < 1e-15);
    }
    const Mat2 m = AlgebraVector::basis(a).matrix();
    CHECK(std::abs(m.trace()) < 1e-15);
    CHECK(distance(m.adjoint(), cplx(-1.0) * m) < 1e-15);
  }
}

TEST_CASE("exp_group special values") {
  CHECK(exp_group(AlgebraVector{}) == GroupElement::identity());
  const double pi = std::numbers::pi;
  CHECK(distance(exp_group((2 * pi) * AlgebraVector::basis(2)).matrix(), cplx(-1.0) * Mat2::identity()) < 1e-14);
  CHECK(distance(exp_group((4 * pi) * AlgebraVector::basis(2)).matrix(), Mat2::identity()) < 1e-14);
}

TEST_CASE("exp_group matches eigendecomposition oracle and stays in SU(2)") {
  CounterRng rng(11, 0);
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector x = random_in_ball(rng, 10.0);
    const GroupElement g = exp_group(x);
    CHECK(dist(g.matrix(), eig_exp(x.matrix())) < 1e-12);
    CHECK(g.unitarity_defect() < 1e-12);
  }
}

TEST_CASE("exp_complex") {
  CHECK(exp_complex(ComplexAlgebraVector{}) == ComplexGroupElement::identity());
  const ComplexAlgebraVector iy(AlgebraVector{}, 0.5 * AlgebraVector::basis(2));
  const Mat2 m = exp_complex(iy).matrix();
  CHECK(std::abs(m(0, 0) - std::exp(0.25)) < 1e-14);
  CHECK(std::abs(m(1, 1) - std::exp(-0.25)) < 1e-14);
  CHECK(std::abs(m(0, 1)) < 1e-15);
  CHECK(std::abs(m(1, 0)) < 1e-15);

  CounterRng rng(12, 0);
  for (int i = 0; i < 200; ++i) {
    const AlgebraVector re = random_vector(rng, 1.0);
    const AlgebraVector im = random_vector(rng, 1.0);
    const ComplexAlgebraVector z(re, im);
    const ComplexGroupElement g = exp_complex(z);
    CHECK(dist(g.matrix(), eig_exp(z.matrix())) < 1e-12 * (1 + g.matrix().frobenius()));
    CHECK(std::abs(g.matrix().det() - 1.0) < 1e-12);
    const ComplexGroupElement r = exp_complex(ComplexAlgebraVector(re, AlgebraVector{}));
    CHECK(distance(r.matrix(), exp_group(re).matrix()) < 1e-15);
  }
}

TEST_CASE("log_group") {
  CHECK(log_group(GroupElement::identity()) == AlgebraVector{});
  const AlgebraVector x = 0.3 * AlgebraVector::basis(0);
  const AlgebraVector l = log_group(exp_group(x));
  CHECK((l - x).norm() < 1e-15);
  CHECK_THROWS_AS(log_group(GroupElement(cplx(-1.0) * Mat2::identity())), CutLocusError);

  CounterRng rng(13, 0);
  for (int i = 0; i < 1000; ++i) {
    const AlgebraVector v = random_in_ball(rng, 2 * std::numbers::pi - 1e-3);
    const AlgebraVector w = log_group(exp_group(v));
    CHECK(w.norm() < 2 * std::numbers::pi);
    CHECK(distance(exp_group(w).matrix(), exp_group(v).matrix()) < 1e-10);
  }
}

TEST_CASE("log_complex inverts exp_complex near the identity") {
  CounterRng rng(14, 0);
  for (int i = 0; i < 500; ++i) {
    const ComplexAlgebraVector z(random_in_ball(rng, 1.5), random_in_ball(rng, 1.0));
    const ComplexAlgebraVector w = log_complex(exp_complex(z));
    for (int a = 0; a < 3; ++a) CHECK(std::abs(w.c[a] - z.c[a]) < 1e-10);
  }
  CHECK_THROWS_AS(log_complex(ComplexGroupElement(cplx(-1.0) * Mat2::identity())), CutLocusError);
}

TEST_CASE("Ad-invariance of the inner product") {
  CounterRng rng(15, 0);
  for (int i = 0; i < 1000; ++i) {
    const GroupElement g = haar_sample(rng);
    const AlgebraVector x = random_vector(rng, 2.0), y = random_vector(rng, 2.0);
    CHECK(std::abs(inner(adjoint_action(g, x), adjoint_action(g, y)) - inner(x, y)) < 1e-12);
  }
}

TEST_CASE("polar decomposition") {
  SUBCASE("unitary input") {
    CounterRng rng(16, 0);
    const GroupElement g = haar_sample(rng);
    const PolarParts p = polar_decompose(g);
    CHECK(distance(p.unitary.matrix(), g.matrix()) < 1e-15);
    CHECK(p.log_positive.norm() < 1e-15);
  }
  SUBCASE("positive input") {
    const AlgebraVector y0{{0.4, -0.2, 0.7}};
    const PolarParts p = polar_decompose(polar_compose(GroupElement::identity(), y0));
    CHECK(distance(p.unitary.matrix(), Mat2::identity()) < 1e-14);
    CHECK((p.log_positive - y0).norm() < 1e-14);
  }
  SUBCASE("identity and trivial Y") {
    CHECK(polar_compose(GroupElement::identity(), AlgebraVector{}) == ComplexGroupElement::identity());
    CounterRng rng(17, 0);
    const GroupElement x = haar_sample(rng);
    CHECK(distance(polar_compose(x, AlgebraVector{}).matrix(), x.matrix()) < 1e-15);
  }
  SUBCASE("SVD oracle on random SL(2,C)") {
    CounterRng rng(18, 0);
    for (int i = 0; i < 300; ++i) {
      const ComplexGroupElement g = exp_complex(ComplexAlgebraVector(random_vector(rng, 1.5), random_vector(rng, 1.0)));
      const PolarParts p = polar_decompose(g);
      CHECK(distance(polar_compose(p.unitary, p.log_positive).matrix(), g.matrix()) < 1e-12);
      Eigen::JacobiSVD<Eigen::Matrix2cd> svd(to_eigen(g.matrix()), Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::Matrix2cd unitary = svd.matrixU() * svd.matrixV().adjoint();
      const Eigen::Matrix2cd positive = svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().adjoint();
      CHECK(dist(p.unitary.matrix(), unitary) < 1e-12);
      CHECK(dist(exp_complex(ComplexAlgebraVector(AlgebraVector{}, p.log_positive)).matrix(), positive) < 1e-12);
      // tr log p = 0 is automatic for an algebra vector; det p = 1 checks it numerically.
      CHECK(std::abs(positive.determinant() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("polar roundtrip over 10^4 draws with |Y| <= 3") {
  CounterRng rng(19, 0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const GroupElement x = haar_sample(rng);
    const AlgebraVector y = random_in_ball(rng, 3.0);
    const PolarParts p = polar_decompose(polar_compose(x, y));
    worst = std::max(worst, distance(p.unitary.matrix(), x.matrix()));
    worst = std::max(worst, (p.log_positive - y).norm());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("imaginary_norm matches polar decomposition") {
  CounterRng rng(20, 0);
  for (int i = 0; i < 200; ++i) {
    const AlgebraVector y = random_in_ball(rng, 3.0);
    const ComplexGroupElement g = polar_compose(haar_sample(rng), y);
    CHECK(std::abs(g.imaginary_norm() - y.norm()) < 1e-12);
  }
}

TEST_CASE("Haar quadrature") {
  const auto nodes = haar_quadrature(HaarRule::for_degree(8));
  double total = 0, m2 = 0, m2sq = 0, m3 = 0;
  for (const auto& q : nodes) {
    total += q.weight;
    m2 += q.weight * chi_angle(2, q.x);
    m3 += q.weight * chi_angle(3, q.x);
    m2sq += q.weight * chi_angle(2, q.x) * chi_angle(2, q.x);
  }
  CHECK(std::abs(total - 1.0) < 1e-14);
  CHECK(std::abs(m2) < 1e-14);
  CHECK(std::abs(m3) < 1e-14);
  CHECK(std::abs(m2sq - 1.0) < 1e-14);

  // Brute-force midpoint rule in Euler angles with the sin(beta)/2 density.
  const int nb = 400, na = 64;
  double brute = 0;
  for (int i = 0; i < nb; ++i) {
    const double beta = std::numbers::pi * (i + 0.5) / nb;
    for (int j = 0; j < na; ++j) {
      const double xi = 2 * std::numbers::pi * (j + 0.5) / na;
      const cplx a = std::cos(beta / 2) * std::polar(1.0, xi);
      const GroupElement x(Mat2{{a, -std::sin(beta / 2), std::sin(beta / 2), std::conj(a)}});
      brute += chi_angle(2, x) * chi_angle(2, x) * std::sin(beta) / 2 * (std::numbers::pi / nb) / na;
    }
  }
  CHECK(std::abs(brute - m2sq) < 1e-5);
}

TEST_CASE("Haar quadrature integrates matrix coefficients exactly") {
  const auto nodes = haar_quadrature(HaarRule::for_degree(6));
  // Entries of the defining representation and their products.
  cplx s00 = 0, s00sq = 0, s01conj = 0;
  for (const auto& q : nodes) {
    const Mat2& m = q.x.matrix();
    s00 += q.weight * m(0, 0);
    s00sq += q.weight * std::norm(m(0, 0));
    s01conj += q.weight * m(0, 1) * std::conj(m(0, 0));
  }
  CHECK(std::abs(s00) < 1e-15);
  CHECK(std::abs(s00sq - 0.5) < 1e-15);
  CHECK(std::abs(s01conj) < 1e-15);
}

TEST_CASE("Haar sampler moments") {
  const int n = 1000000;
  for (int deg : {2, 3, 4}) {
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
      CounterRng rng(21, static_cast<std::uint64_t>(i));
      const double v = chi_angle(deg, haar_sample(rng));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean) < 4 * se);
  }
}

TEST_CASE("Gauss rules") {
  const auto [x, w] = gauss_legendre(10);
  double s = 0, s8 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    s8 += w[i] * std::pow(x[i], 18);
  }
  CHECK(std::abs(s - 2.0) < 1e-14);
  CHECK(std::abs(s8 - 2.0 / 19.0) < 1e-14);
  const auto [h, hw] = gauss_hermite(12);
  double m4 = 0;
  for (std::size_t i = 0; i < h.size(); ++i) m4 += hw[i] * std::pow(h[i], 4);
  CHECK(std::abs(m4 - 0.75 * std::sqrt(std::numbers::pi)) < 1e-13);
}
