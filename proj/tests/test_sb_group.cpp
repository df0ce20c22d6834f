#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ymcyl/sb_group.hpp"

using namespace ymcyl;

namespace {

AlgebraVector random_vector(CounterRng& rng, double scale) {
  return {{scale * rng.normal(), scale * rng.normal(), scale * rng.normal()}};
}

AlgebraVector with_norm(AlgebraVector v, double r) {
  const double n = v.norm();
  for (double& c : v.c) c *= r / n;
  return v;
}

double casimir_oracle(int n) { return (n * n - 1) / 4.0; }

ComplexAlgebraVector smooth_z(double tau, double im) {
  const double w = 2.0 * std::numbers::pi * tau;
  const AlgebraVector re{{0.6 + 0.3 * std::cos(w), -0.4, 0.5 * std::sin(w)}};
  const AlgebraVector ip{{im * std::cos(w), im * std::sin(w), 0.0}};
  return ComplexAlgebraVector(re, ip);
}

ComplexLatticeConnection lattice_z(int n, double im) {
  std::vector<ComplexAlgebraVector> links;
  for (int k = 0; k < n; ++k) links.push_back(smooth_z((k + 0.5) / n, im));
  return ComplexLatticeConnection(links);
}

const std::vector<TestFunction>& test_set() {
  static const std::vector<TestFunction> set{{"1", BandLimitedFunction::character(1)},
                                             {"chi2", BandLimitedFunction::character(2)},
                                             {"chi3", BandLimitedFunction::character(3)}};
  return set;
}

}  // namespace

TEST_CASE("group transform") {
  CounterRng rng(41, 0);
  const ComplexGroupElement g = polar_compose(haar_sample(rng), random_vector(rng, 0.7));
  CHECK(c_transform_K(BandLimitedFunction::constant(1.0), 0.5, g) == cplx(1.0));
  for (int n = 1; n <= 5; ++n) {
    const cplx want = std::exp(-0.5 * casimir_oracle(n) / 2.0) * character(n, g);
    CHECK(std::abs(c_transform_K(BandLimitedFunction::character(n), 0.5, g) - want) < 1e-13 * std::abs(want) + 1e-15);
  }

  SUBCASE("on K it is convolution with the heat kernel") {
    BandLimitedFunction phi(3);
    phi.set_coefficient(2, 0, 1, cplx(0.3, -0.2));
    phi.set_coefficient(3, 2, 1, cplx(-0.5, 0.1));
    phi.set_coefficient(1, 0, 0, 0.7);
    const auto rule = haar_quadrature(HaarRule::for_degree(60));
    for (double hbar : {0.25, 0.5}) {
      for (int trial = 0; trial < 3; ++trial) {
        const GroupElement x0 = haar_sample(rng);
        cplx conv = 0.0;
        for (const auto& q : rule) conv += q.weight * heat_kernel(hbar, x0 * q.x.inverse()) * phi(q.x);
        CHECK(std::abs(conv - c_transform_K(phi, hbar, x0)) < 1e-8);
      }
    }
  }
}

TEST_CASE("reduced coherent states") {
  CounterRng rng(42, 0);
  SUBCASE("reproducing identity over the grid") {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double r = 1.5 * rng.uniform();
      const ComplexGroupElement g = polar_compose(haar_sample(rng), with_norm(random_vector(rng, 1.0), r));
      for (double hbar : {0.25, 0.5}) {
        for (double s : {1.0, kInfiniteTime}) {
          const auto state = ReducedCoherentState::make(g, s, hbar);
          for (int n : {1, 2, 3}) {
            const auto phi = BandLimitedFunction::character(n);
            worst = std::max(worst, std::abs(coherent_overlap(state, phi) - c_transform_K(phi, hbar, g)));
          }
        }
      }
    }
    CHECK(worst < 1e-8);
  }
  SUBCASE("constants and real points") {
    const GroupElement x = haar_sample(rng);
    const auto state = ReducedCoherentState::make(x, 1.0, 0.5);
    CHECK(std::abs(coherent_overlap(state, BandLimitedFunction::constant(1.0)) - 1.0) < 1e-12);
    const cplx want = std::exp(-0.5 * casimir_oracle(2) / 2.0) * character(2, x);
    CHECK(std::abs(coherent_overlap(state, BandLimitedFunction::character(2)) - want) < 1e-12);
  }
  SUBCASE("unit imaginary part") {
    const ComplexGroupElement g = polar_compose(GroupElement(), with_norm(random_vector(rng, 1.0), 1.0));
    BandLimitedFunction phi(3);
    phi.set_coefficient(3, 0, 2, cplx(1.0, 0.5));
    phi.set_coefficient(2, 1, 1, -0.4);
    for (double s : {1.0, kInfiniteTime}) {
      CHECK(std::abs(coherent_overlap(ReducedCoherentState::make(g, s, 0.5), phi) - c_transform_K(phi, 0.5, g)) < 1e-8);
    }
  }
  SUBCASE("the density divides by rho_s") {
    const ComplexGroupElement g = polar_compose(haar_sample(rng), random_vector(rng, 0.5));
    const auto finite = ReducedCoherentState::make(g, 1.0, 0.5);
    auto limit = finite;
    limit.s = kInfiniteTime;
    const GroupElement x = haar_sample(rng);
    CHECK(std::abs(finite(x) * heat_kernel(1.0, x) - limit(x)) < 1e-12 * std::abs(limit(x)));
  }
  SUBCASE("overlap is holomorphic in g") {
    const ComplexGroupElement g0 = polar_compose(haar_sample(rng), random_vector(rng, 0.6));
    const ComplexAlgebraVector dir(random_vector(rng, 1.0), random_vector(rng, 1.0));
    const auto base = ReducedCoherentState::make(g0, kInfiniteTime, 0.5, 1e-16);
    BandLimitedFunction phi(3);
    phi.set_coefficient(3, 1, 0, cplx(0.2, 0.9));
    phi.set_coefficient(2, 0, 0, 0.6);
    auto f = [&](cplx w) {
      auto st = base;
      st.g = g0 * exp_complex(w * dir);
      return coherent_overlap(st, phi);
    };
    const double h = 1e-4;
    const cplx du = (f(h) - f(-h)) / (2 * h);
    const cplx dv = (f(cplx(0, h)) - f(cplx(0, -h))) / (2 * h);
    CHECK(std::abs(dv - cplx(0, 1) * du) < 1e-6);
    CHECK(std::abs(du) > 1e-3);
  }
  SUBCASE("a cutoff too small for g is reported") {
    const ComplexGroupElement g = polar_compose(GroupElement(), {{3.0, 0.0, 0.0}});
    ReducedCoherentState st{g, 1.0, 0.25, 4};
    CHECK_THROWS_AS(coherent_overlap(st, BandLimitedFunction::character(2)), TruncationError);
  }
}

TEST_CASE("mu samples and Gram reconstruction") {
  const auto a = draw_mu(16, 1.0, 0.5, 9, 4);
  const auto b = draw_mu(16, 1.0, 0.5, 9, 4);
  CHECK(a.g == b.g);
  CHECK(a.n == 16);
  CHECK(a.seed == 9);
  CHECK(a.index == 4);
  CHECK(!(draw_mu(16, 1.0, 0.5, 9, 5).g == a.g));

  const auto est = estimate_gram(test_set(), 1.0, 0.5, 16, 2000, 3);
  CHECK(est.value == est.value.adjoint());
  CHECK(est.value(0, 0) == cplx(1.0));
  CHECK(est.std_error_re(0, 0) == 0.0);

  SUBCASE("exact Gram matrices") {
    const auto finite = exact_gram(test_set(), 1.0);
    // chi_2^2 = 1 + chi_3, so ||chi_2||^2 = 1 + 3 e^{-s c(3)/2}.
    CHECK(std::abs(finite(1, 1).real() - (1.0 + 3.0 * std::exp(-1.0))) < 1e-12);
    CHECK(std::abs(finite(0, 1).real() - 2.0 * std::exp(-3.0 / 8.0)) < 1e-12);
    const auto haar = exact_gram(test_set(), kInfiniteTime);
    CHECK((haar - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-15);
  }

  SUBCASE("resolution of the identity") {
    const auto report = resolution_check(test_set(), 1.0, 0.5, 128, 40000, 21);
    for (const auto& row : report.rows) CHECK_MESSAGE(row.pass, row.name, " z = ", row.score);
    CHECK(report.rows.size() == 9);
  }
}

TEST_CASE("nu limit") {
  const std::vector<TestFunction> set{test_set()[0], test_set()[1]};
  const auto report = nu_limit_study(set, 0.5, {2.0, 8.0, 32.0}, 256, 20000, 31);
  for (const auto& row : report.rows) CHECK_MESSAGE(row.pass, row.name, " score = ", row.score);
  bool saw_zero = false;
  for (const auto& row : report.rows) saw_zero = saw_zero || row.name == "1.deviation_zero";
  CHECK(saw_zero);
  CHECK_THROWS_AS(nu_limit_study(set, 0.5, {8.0, 2.0}, 8, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(nu_limit_study(set, 0.5, {0.2}, 8, 10, 1), std::invalid_argument);
}

TEST_CASE("lattice heat evolution, exact") {
  // One link, Z = 0: |X| is chi-distributed with scale sqrt(hbar) and
  // E cos(k|X|) = e^{-hbar k^2/2} (1 - hbar k^2).
  for (double hbar : {0.25, 0.5, 1.0}) {
    const ComplexLatticeConnection z({ComplexAlgebraVector()});
    const cplx v = heat_evolve_exact(BandLimitedFunction::character(2), z, hbar, 16);
    CHECK(std::abs(v - 2.0 * std::exp(-hbar / 8.0) * (1.0 - hbar / 4.0)) < 1e-12);
  }
  const auto z = lattice_z(8, 0.5);
  CHECK(std::abs(heat_evolve_exact(BandLimitedFunction::constant(1.0), z, 0.5) - 1.0) < 1e-13);
  const auto phi = BandLimitedFunction::character(3);
  const cplx exact = heat_evolve_exact(phi, z, 0.5);
  CHECK(std::abs(exact - heat_evolve_exact(phi, z, 0.5, 14)) < 1e-12);
  const auto mc = heat_evolve_mc([&](const ComplexLatticeConnection& c) { return phi(holonomy_complex(c)); }, z, 0.5,
                                 100000, 5);
  CHECK(std::abs(mc.value.real() - exact.real()) < 4 * mc.std_error_re);
  CHECK(std::abs(mc.value.imag() - exact.imag()) < 4 * mc.std_error_im);
}

TEST_CASE("lattice heat evolution matches the group transform") {
  const TestFunction one{"1", BandLimitedFunction::constant(1.0)};
  const auto trivial = theorem4_check(one, 1.0, 0.5, 8, lattice_z(8, 0.5), 1000, 1);
  CHECK(trivial.rows[0].estimate == 1.0);
  CHECK(trivial.rows[2].estimate == 1.0);
  CHECK(trivial.rows[2].score == 0.0);

  for (double im : {0.0, 0.5}) {
    for (int n : {32, 64}) {
      const auto report = theorem4_check(test_set()[1], 1.0, 0.5, n, lattice_z(n, im), 100000, 50 + n);
      for (const auto& row : report.rows) CHECK_MESSAGE(row.pass, "im ", im, " N ", n, " ", row.name);
    }
  }
  const auto trend = theorem4_trend(test_set()[2], 0.5, [](double t) { return smooth_z(t, 0.5); }, {8, 16, 32, 64});
  CHECK(trend.passed());
  // First order: the residual roughly halves with each doubling.
  CHECK(trend.rows[3].estimate < 0.6 * trend.rows[2].estimate);
  CHECK(trend.rows[3].estimate > 0.4 * trend.rows[2].estimate);

  CHECK_THROWS_AS(theorem4_check(test_set()[1], 1.0, 0.5, 16, lattice_z(8, 0.0), 10, 1), ShapeMismatch);
  CHECK_THROWS_AS(theorem4_check(test_set()[1], 0.2, 0.5, 8, lattice_z(8, 0.0), 10, 1), std::invalid_argument);
}

TEST_CASE("collapse of the coherent-state parameters") {
  const int n = 32;
  const auto z = lattice_z(n, 0.3);

  SUBCASE("power-of-two gauge gives bit-identical holonomy") {
    const ComplexGroupElement c(Mat2{{2.0, 0.0, 0.0, 0.5}});
    const auto sites = real_translation_gauge(n, [](double) { return GroupElement(); }, c);
    const auto v = link_variables(z);
    const auto vw = gauge_links(sites, v);
    CHECK(holonomy_of_links(vw) == holonomy_of_links(v));
    const auto report = collapse_check(test_set()[2], 0.5, z, sites, 100000, 7, true);
    for (const auto& row : report.rows) CHECK_MESSAGE(row.pass, row.name, " score ", row.score);
  }
  SUBCASE("smooth complex gauge") {
    const AlgebraVector x{{1.2, -0.7, 0.4}};
    const ComplexGroupElement c = exp_complex(ComplexAlgebraVector(AlgebraVector{{0.1, 0.0, -0.2}}, {{0.3, 0.2, -0.1}}));
    const auto sites = real_translation_gauge(
        n,
        [&](double t) {
          AlgebraVector y = x;
          for (double& e : y.c) e *= std::sin(std::numbers::pi * t);
          return exp_group(y);
        },
        c);
    CHECK(sites.front() == ComplexGroupElement());
    CHECK(sites.back() == ComplexGroupElement());
    // Interior steps are unitary: the translation part is real.
    for (int k = 2; k < n; ++k) {
      const Mat2 step = (sites[k] * sites[k - 1].inverse()).matrix();
      CHECK((step * step.adjoint() - Mat2::identity()).frobenius() < 1e-12);
    }
    const auto report = collapse_check(test_set()[1], 0.5, z, sites, 100000, 8, false);
    for (const auto& row : report.rows) CHECK_MESSAGE(row.pass, row.name, " score ", row.score);
  }
  CHECK_THROWS_AS(gauge_links(std::vector<ComplexGroupElement>(3), link_variables(z)), ShapeMismatch);
}
