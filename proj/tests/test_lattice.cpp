#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ymcyl/harmonic.hpp"
#include "ymcyl/lattice.hpp"

using namespace ymcyl;

namespace {

AlgebraVector random_vector(CounterRng& rng, double scale) {
  return {{scale * rng.normal(), scale * rng.normal(), scale * rng.normal()}};
}

LatticeConnection random_connection(CounterRng& rng, int n, double scale) {
  std::vector<AlgebraVector> links;
  for (int k = 0; k < n; ++k) links.push_back(random_vector(rng, scale));
  return LatticeConnection(links);
}

LatticeGaugeTransform random_loop(CounterRng& rng, int n) {
  std::vector<GroupElement> sites{GroupElement()};
  for (int k = 1; k < n; ++k) sites.push_back(haar_sample(rng));
  sites.emplace_back();
  return LatticeGaugeTransform::based_loop(sites);
}

LatticeGaugeTransform random_path(CounterRng& rng, int n) {
  std::vector<GroupElement> sites{GroupElement()};
  for (int k = 1; k <= n; ++k) sites.push_back(haar_sample(rng));
  return LatticeGaugeTransform::path(sites);
}

// Path-ordered exponential of a smooth connection by RK4 on
// dU/dtau = A(tau) U, as an independent holonomy oracle.
GroupElement path_ordered_exp(const std::function<AlgebraVector(double)>& a, int steps) {
  Mat2 u = Mat2::identity();
  const double h = 1.0 / steps;
  auto rhs = [&](double t, const Mat2& m) { return a(t).matrix() * m; };
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Mat2 k1 = rhs(t, u);
    const Mat2 k2 = rhs(t + h / 2, u + cplx(h / 2) * k1);
    const Mat2 k3 = rhs(t + h / 2, u + cplx(h / 2) * k2);
    const Mat2 k4 = rhs(t + h, u + cplx(h) * k3);
    u = u + cplx(h / 6) * (k1 + cplx(2) * k2 + cplx(2) * k3 + k4);
  }
  return GroupElement(u);
}

double chi(int n, const GroupElement& x) { return character(n, x).real(); }

}  // namespace

TEST_CASE("connection basics") {
  const AlgebraVector x{{0.3, -1.2, 0.7}};
  for (int n : {1, 5, 64}) {
    const auto a = LatticeConnection::constant(n, x);
    CHECK(std::abs(a.norm_sq() - x.norm_sq()) < 1e-14);
    CHECK(distance(holonomy(a).matrix(), exp_group(x).matrix()) < 1e-13);
    const auto back = LatticeConnection::from_coordinates(a.coordinates());
    CHECK(flat_distance(back, a) < 1e-14);
  }
  CHECK(holonomy(LatticeConnection::zero(7)) == GroupElement());
  CHECK_THROWS(LatticeConnection::zero(0));
}

TEST_CASE("holonomy ordering and refinement") {
  CounterRng rng(21, 0);
  const auto a = random_connection(rng, 3, 2.0);
  const GroupElement want = link_transport(a.links[2], 3) * link_transport(a.links[1], 3) * link_transport(a.links[0], 3);
  CHECK(distance(holonomy(a).matrix(), want.matrix()) < 1e-15);
  CHECK(distance(holonomy(a.refine()).matrix(), holonomy(a).matrix()) < 1e-14);

  // A smooth connection sampled at N midpoints converges to the path-ordered exponential.
  const AlgebraVector x0{{0.4, 0.1, -0.3}}, x1{{1.0, -0.5, 0.2}}, x2{{-0.2, 0.9, 0.6}};
  const auto smooth = [&](double t) {
    return x0 + std::cos(2 * std::numbers::pi * t) * x1 + std::sin(2 * std::numbers::pi * t) * x2;
  };
  const GroupElement exact = path_ordered_exp(smooth, 4000);
  double prev = 1e9;
  for (int n : {8, 16, 32, 64}) {
    const double err = distance(holonomy(LatticeConnection::sample(n, smooth)).matrix(), exact.matrix());
    CHECK(err < prev / 2);
    prev = err;
  }
}

TEST_CASE("complex holonomy") {
  CounterRng rng(22, 0);
  const auto a = random_connection(rng, 6, 1.0);
  const ComplexLatticeConnection real(a, LatticeConnection::zero(6));
  CHECK(distance(holonomy_complex(real).matrix(), holonomy(a).matrix()) < 1e-14);
  CHECK(holonomy_complex(ComplexLatticeConnection(LatticeConnection::zero(4), LatticeConnection::zero(4))) ==
        ComplexGroupElement());
  const ComplexAlgebraVector z(random_vector(rng, 1.0), random_vector(rng, 0.5));
  const ComplexLatticeConnection zc(std::vector<ComplexAlgebraVector>(8, z));
  CHECK(distance(holonomy_complex(zc).matrix(), exp_complex(z).matrix()) < 1e-13);
  CHECK(std::abs(holonomy_complex(zc).matrix().det() - 1.0) < 1e-13);

  // Cauchy-Riemann in one link coordinate.
  auto p = random_connection(rng, 6, 0.3);
  const ComplexLatticeConnection base(a, p);
  const double h = 1e-5;
  for (std::size_t k : {0u, 3u}) {
    for (std::size_t c = 0; c < 3; ++c) {
      auto xp = base, xm = base, yp = base, ym = base;
      xp.links[k].c[c] += h;
      xm.links[k].c[c] -= h;
      yp.links[k].c[c] += cplx(0, h);
      ym.links[k].c[c] -= cplx(0, h);
      const Mat2 dx = cplx(1 / (2 * h)) * (holonomy_complex(xp).matrix() - holonomy_complex(xm).matrix());
      const Mat2 dy = cplx(1 / (2 * h)) * (holonomy_complex(yp).matrix() - holonomy_complex(ym).matrix());
      CHECK((dx + cplx(0, 1) * dy).frobenius() < 1e-8);
    }
  }
}

TEST_CASE("gauge invariance of the holonomy") {
  CounterRng rng(23, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const auto a = random_connection(rng, n, 3.0);
    const auto g = random_loop(rng, n);
    worst = std::max(worst, distance(holonomy(gauge_act(g, a)).matrix(), holonomy(a).matrix()));
  }
  CHECK(worst < 1e-12);

  const auto g = random_loop(rng, 10);
  CHECK(distance(holonomy(gauge_act(g, LatticeConnection::zero(10))).matrix(), Mat2::identity()) < 1e-12);
  const auto id = LatticeGaugeTransform::based_loop(std::vector<GroupElement>(11));
  const auto a = random_connection(rng, 10, 1.0);
  CHECK(flat_distance(gauge_act(id, a), a) < 1e-13);
  CHECK_THROWS_AS(gauge_act(id, random_connection(rng, 9, 1.0)), ShapeMismatch);
  CHECK_THROWS(gauge_act(random_path(rng, 10), a));
  CHECK_THROWS(LatticeGaugeTransform::based_loop({GroupElement(), haar_sample(rng)}));
  CHECK_THROWS(LatticeGaugeTransform::path({haar_sample(rng), GroupElement()}));
}

TEST_CASE("path group covariance") {
  CounterRng rng(24, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const auto a = random_connection(rng, n, 3.0);
    const auto g = random_path(rng, n);
    // Later links multiply on the left, so the endpoint w appears on the left.
    const GroupElement want = g.endpoint() * holonomy(a);
    worst = std::max(worst, distance(holonomy(path_group_act(g, a)).matrix(), want.matrix()));
  }
  CHECK(worst < 1e-12);

  const auto g = random_path(rng, 12);
  CHECK(distance(holonomy(path_group_act(g, LatticeConnection::zero(12))).matrix(), g.endpoint().matrix()) < 1e-12);
  // With endpoint e the path action is the gauge action.
  const auto loop = random_loop(rng, 12);
  const auto a = random_connection(rng, 12, 1.0);
  CHECK(flat_distance(path_group_act(loop, a), gauge_act(loop, a)) == 0.0);
}

TEST_CASE("gauge isometry") {
  CounterRng rng(25, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 20);
    const auto a = random_connection(rng, n, 2.0);
    const auto b = random_connection(rng, n, 2.0);
    const double d = link_distance(a, b);
    const auto g = random_loop(rng, n);
    const auto p = random_path(rng, n);
    worst = std::max(worst, std::abs(link_distance(gauge_act(g, a), gauge_act(g, b)) - d));
    worst = std::max(worst, std::abs(link_distance(path_group_act(p, a), path_group_act(p, b)) - d));
  }
  CHECK(worst < 1e-12);

  // d(A, 0) is the Riemann-sum norm while links stay inside the injectivity radius.
  const auto a = random_connection(rng, 16, 3.0);
  CHECK(std::abs(link_distance(a, LatticeConnection::zero(16)) - a.norm()) < 1e-12);
}

TEST_CASE("link action reduces to the continuum gauge action") {
  // Transport solves dU/dtau = A U, so g U(tau) g(0)^{-1} is transport for
  // g A g^{-1} + g' g^{-1}. The derivative term flips sign relative to the
  // convention dU/dtau = -A U; this locks ours. g = exp(tau Y + tau^2 W).
  const AlgebraVector x0{{0.4, 0.1, -0.3}}, x1{{1.0, -0.5, 0.2}};
  const AlgebraVector y{{0.7, -0.2, 0.5}}, w{{-0.3, 0.6, 0.1}};
  const auto a = [&](double t) { return x0 + std::sin(2 * std::numbers::pi * t) * x1; };
  const auto g = [&](double t) { return exp_group(t * y + (t * t) * w); };
  const auto continuum = [&](double t) {
    const double d = 1e-6;
    const Mat2 dg = cplx(1 / (2 * d)) * (g(t + d).matrix() - g(t - d).matrix());
    const Mat2 gi = g(t).inverse().matrix();
    return AlgebraVector::from_matrix(g(t).matrix() * a(t).matrix() * gi + dg * gi);
  };
  double prev = 1e9;
  for (int n : {8, 16, 32, 64, 128}) {
    const auto moved = path_group_act(LatticeGaugeTransform::path_from(n, g), LatticeConnection::sample(n, a));
    const auto want = LatticeConnection::sample(n, continuum);
    const double err = flat_distance(moved, want);
    CHECK(err < prev * 0.6);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("Gaussian samplers") {
  SUBCASE("P_s coordinate moments") {
    const int n = 16;
    const double s = 0.7;
    const auto est = sample_moments(100000, 3, [&](std::size_t i, double* out) {
      CounterRng rng(31, i);
      const auto a = sample_Ps(n, s, rng);
      const auto x = a.coordinates();
      out[0] = a.norm_sq();
      out[1] = x[5] * x[5];
      out[2] = x[0] * x[7];
    });
    // ||A||^2 is a sum of 3N squared N(0, s) coordinates.
    CHECK(std::abs(est.mean[0] - 3 * n * s) < 4 * est.std_error[0]);
    CHECK(std::abs(est.mean[1] - s) < 4 * est.std_error[1]);
    CHECK(std::abs(est.mean[2]) < 4 * est.std_error[2]);
  }
  SUBCASE("M_{s,hbar} coordinate moments") {
    const int n = 8;
    const double s = 1.0, hbar = 0.5;
    const auto est = sample_moments(100000, 2, [&](std::size_t i, double* out) {
      CounterRng rng(32, i);
      const auto z = sample_Msh(n, s, hbar, rng);
      out[0] = z.real().coordinates()[4];
      out[0] *= out[0];
      out[1] = z.imag().coordinates()[9];
      out[1] *= out[1];
    });
    CHECK(std::abs(est.mean[0] - (2 * s - hbar) / 2) < 4 * est.std_error[0]);
    CHECK(std::abs(est.mean[1] - hbar / 2) < 4 * est.std_error[1]);
    CHECK_THROWS(sample_Msh(n, 0.2, 0.5, std::uint64_t{1}));
  }
  SUBCASE("same seed, same sample") {
    CHECK(flat_distance(sample_Ps(8, 1.0, std::uint64_t{5}), sample_Ps(8, 1.0, std::uint64_t{5})) == 0.0);
    CHECK(flat_distance(sample_Ps(8, 1.0, std::uint64_t{5}), sample_Ps(8, 1.0, std::uint64_t{6})) > 0.0);
  }
}

TEST_CASE("pushforward of P_s is the heat kernel measure") {
  // E[chi_n(h(A))] = n e^{-s c(n)/2}, with c(n) from the generators.
  const int n_links = 64;
  for (double s : {0.5, 1.0}) {
    const auto est = sample_moments(200000, 3, [&](std::size_t i, double* out) {
      CounterRng rng(33, i);
      const GroupElement h = holonomy(sample_Ps(n_links, s, rng));
      for (int n = 2; n <= 4; ++n) out[n - 2] = chi(n, h);
    });
    for (int n = 2; n <= 4; ++n) {
      const double target = n * std::exp(-s * casimir(n) / 2);
      CHECK(std::abs(est.mean[static_cast<std::size_t>(n - 2)] - target) < 4 * est.std_error[static_cast<std::size_t>(n - 2)]);
    }
  }
  // Large s approaches Haar measure.
  const auto est = sample_moments(20000, 1, [&](std::size_t i, double* out) {
    CounterRng rng(34, i);
    out[0] = chi(2, holonomy(sample_Ps(16, 40.0, rng)));
  });
  CHECK(std::abs(est.mean[0]) < 4 * est.std_error[0]);
}

TEST_CASE("free flow") {
  CounterRng rng(26, 0);
  const ClassicalState st{random_connection(rng, 10, 1.0), random_connection(rng, 10, 1.0)};
  CHECK(flat_distance(free_flow(st, 0.0).A, st.A) == 0.0);
  const auto moved = free_flow(st, 7.3);
  CHECK(moved.energy() == st.energy());
  CHECK(flat_distance(moved.P, st.P) == 0.0);
  CHECK(flat_distance(free_flow(free_flow(st, 1.25), 2.5).A, free_flow(st, 3.75).A) < 1e-14);
}

TEST_CASE("lattice Laplacian") {
  CounterRng rng(27, 0);
  SUBCASE("constants and the identity") {
    const auto a = random_connection(rng, 8, 1.0);
    CHECK(std::abs(lattice_laplacian([](const LatticeConnection&) { return 3.0; }, a)) < 1e-12);
    for (int n : {4, 16}) {
      const double v = lattice_laplacian([](const LatticeConnection& c) { return chi(2, holonomy(c)); },
                                         LatticeConnection::zero(n));
      // (Delta chi_2)(I) = -c(2) chi_2(I) = -3/2.
      CHECK(std::abs(v - (-casimir(2) * 2)) < 1e-5);
    }
  }
  SUBCASE("holonomy shortcut agrees with the generic sum") {
    const auto a = random_connection(rng, 12, 1.5);
    const double generic = lattice_laplacian([](const LatticeConnection& c) { return chi(3, holonomy(c)); }, a);
    const double fast = lattice_laplacian_holonomy([](const GroupElement& x) { return chi(3, x); }, a);
    CHECK(std::abs(generic - fast) < 1e-6);
  }
  SUBCASE("quadratic function has an exact Laplacian") {
    // ||A||^2 = sum of squared coordinates, Laplacian 2 * 3N.
    const auto a = random_connection(rng, 5, 1.0);
    CHECK(std::abs(lattice_laplacian([](const LatticeConnection& c) { return c.norm_sq(); }, a) - 30.0) < 1e-6);
  }
}

TEST_CASE("heat evolution by Monte Carlo") {
  CounterRng rng(28, 0);
  const ComplexLatticeConnection z(random_connection(rng, 8, 1.0), random_connection(rng, 8, 0.2));
  const auto one = heat_evolve_mc([](const ComplexLatticeConnection&) { return cplx(1.0); }, z, 0.5, 1000, 3);
  CHECK(one.value == cplx(1.0));
  CHECK(one.std_error_re == 0.0);
  // A linear coordinate is harmonic.
  const auto lin = heat_evolve_mc([](const ComplexLatticeConnection& c) { return c.links[2].c[1]; }, z, 0.5, 100000, 4);
  CHECK(std::abs(lin.value.real() - z.links[2].c[1].real()) < 4 * lin.std_error_re);
  CHECK(std::abs(lin.value.imag() - z.links[2].c[1].imag()) < 1e-12);
  const auto anti = heat_evolve_mc([](const ComplexLatticeConnection& c) { return c.links[2].c[1]; }, z, 0.5, 100, 4, true);
  CHECK(std::abs(anti.value - z.links[2].c[1]) < 1e-12);
}

TEST_CASE("submersion demo") {
  const auto r2 = submersion_demo({"r2", [](double r) { return r * r; }}, 1.3);
  CHECK(r2.passed());
  CHECK(std::abs(r2.rows[0].estimate - 4.0) < 1e-6);
  const auto r3 = submersion_demo({"r3", [](double r) { return r * r * r; }}, 2.0);
  CHECK(r3.passed());
  CHECK(std::abs(r3.rows[0].estimate - 18.0) < 1e-5);
  const auto lg = submersion_demo({"log", [](double r) { return std::log(r); }}, 0.8);
  CHECK(lg.passed());
  CHECK(std::abs(lg.rows[1].estimate) < 1e-6);
}

TEST_CASE("ensemble CSV") {
  std::ostringstream out;
  write_ensemble_csv(out, {LatticeConnection::zero(2), LatticeConnection::constant(2, AlgebraVector{{0, 0, 1}})}, 10);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("sample,x_0_0,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("10,0,0,0,0,0,0,1,0,0,0,0,0,1,0", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("11,", 0) == 0);
}
