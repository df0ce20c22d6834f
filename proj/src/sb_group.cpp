#include "ymcyl/sb_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ymcyl/rng.hpp"

namespace ymcyl {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_hbar(double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
}

void require_s(double s, double hbar) {
  if (!(s > hbar / 2.0)) throw std::invalid_argument("need s > hbar/2");
}

// Exact pairings come from quadrature and carry rounding of this size.
constexpr double kPairingFloor = 1e-12;

// Index of the pair (i, j), i <= j, in the packed upper triangle.
std::size_t packed(std::size_t i, std::size_t j, std::size_t m) { return i * m - i * (i + 1) / 2 + j; }

}  // namespace

cplx c_transform_K(const BandLimitedFunction& phi, double hbar, const ComplexGroupElement& g) {
  require_hbar(hbar);
  return evaluate(heat_semigroup(phi, hbar), g);
}

ReducedCoherentState ReducedCoherentState::make(const ComplexGroupElement& g, double s, double hbar, double tol) {
  require_hbar(hbar);
  if (!(s > 0.0)) throw std::invalid_argument("coherent state needs s > 0");
  const auto rho = HeatKernelSeries::for_tolerance(hbar, g.imaginary_norm(), tol);
  return {g, s, hbar, rho.cutoff()};
}

bool ReducedCoherentState::limit() const { return std::isinf(s); }

cplx ReducedCoherentState::operator()(const GroupElement& x) const {
  const HeatKernelSeries rho(hbar, cutoff);
  const cplx v = std::conj(rho(g * ComplexGroupElement(x.inverse())));
  return limit() ? v : v / heat_kernel(s, x);
}

cplx coherent_overlap(const ReducedCoherentState& state, const BandLimitedFunction& phi, double tol) {
  const HeatKernelSeries rho(state.hbar, state.cutoff);
  const double bound = rho.tail_bound(state.g.imaginary_norm()) * phi.sup_bound();
  if (bound > tol) throw TruncationError("coherent_overlap: heat-kernel cutoff too small for g", bound);

  // conj(psi_g) phi rho_s with psi_g as defined; the rho_s factors cancel only
  // up to rounding, the rule is exact for the band-limited product.
  const auto rule = haar_quadrature(HaarRule::for_degree((state.cutoff - 1) + (phi.cutoff() - 1)));
  cplx sum = 0.0;
  for (const auto& q : rule) {
    const cplx v = rho(state.g * ComplexGroupElement(q.x.inverse()));
    if (state.limit()) {
      sum += q.weight * v * phi(ComplexGroupElement(q.x));
    } else {
      const double weight = heat_kernel(state.s, q.x);
      const cplx psi = std::conj(v) / weight;
      sum += q.weight * std::conj(psi) * phi(ComplexGroupElement(q.x)) * weight;
    }
  }
  return sum;
}

MuSample draw_mu(int n, double s, double hbar, std::uint64_t seed, std::size_t index) {
  CounterRng rng(seed, index);
  return {holonomy_complex(sample_Msh(n, s, hbar, rng)), n, s, hbar, seed, index};
}

namespace {

// One pass over M_{s,hbar}: packed Gram products of the transforms, followed by
// chi_2 of the real-part holonomy when `with_real` is set.
MomentEstimate gram_pass(const std::vector<TestFunction>& phis, double s, double hbar, int n, std::size_t samples,
                         std::uint64_t seed, bool with_real) {
  require_hbar(hbar);
  require_s(s, hbar);
  const std::size_t m = phis.size();
  std::vector<BandLimitedFunction> evolved;
  for (const auto& p : phis) evolved.push_back(heat_semigroup(p.f, hbar));
  const std::size_t pairs = m * (m + 1) / 2;
  return sample_moments(samples, 2 * pairs + (with_real ? 1 : 0), [&](std::size_t i, double* out) {
    CounterRng rng(seed, i);
    const ComplexLatticeConnection z = sample_Msh(n, s, hbar, rng);
    const ComplexGroupElement g = holonomy_complex(z);
    std::vector<cplx> v(m);
    for (std::size_t a = 0; a < m; ++a) v[a] = evolved[a](g);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        const cplx p = std::conj(v[a]) * v[b];
        out[2 * packed(a, b, m)] = p.real();
        out[2 * packed(a, b, m) + 1] = p.imag();
      }
    }
    if (with_real) out[2 * pairs] = character(2, ComplexGroupElement(holonomy(z.real()))).real();
  });
}

GramEstimate unpack_gram(const MomentEstimate& est, std::size_t m) {
  GramEstimate g;
  g.value = Eigen::MatrixXcd::Zero(m, m);
  g.std_error_re = Eigen::MatrixXd::Zero(m, m);
  g.std_error_im = Eigen::MatrixXd::Zero(m, m);
  g.samples = est.count;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const std::size_t k = packed(a, b, m);
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      const cplx v(est.mean[2 * k], a == b ? 0.0 : est.mean[2 * k + 1]);
      g.value(ia, ib) = v;
      g.value(ib, ia) = std::conj(v);
      g.std_error_re(ia, ib) = g.std_error_re(ib, ia) = est.std_error[2 * k];
      g.std_error_im(ia, ib) = g.std_error_im(ib, ia) = a == b ? 0.0 : est.std_error[2 * k + 1];
    }
  }
  return g;
}

}  // namespace

GramEstimate estimate_gram(const std::vector<TestFunction>& phis, double s, double hbar, int n, std::size_t samples,
                           std::uint64_t seed) {
  return unpack_gram(gram_pass(phis, s, hbar, n, samples, seed, false), phis.size());
}

Eigen::MatrixXcd exact_gram(const std::vector<TestFunction>& phis, double s) {
  const auto m = static_cast<Eigen::Index>(phis.size());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      // <phi_a, phi_b> = int conj(phi_a) phi_b rho_s.
      const cplx v = std::isinf(s) ? coefficient_inner_product(phis[b].f, phis[a].f)
                                   : inner_product_rho_s(phis[b].f, phis[a].f, s).value;
      g(a, b) = v;
      g(b, a) = std::conj(v);
    }
  }
  for (Eigen::Index a = 0; a < m; ++a) g(a, a) = g(a, a).real();
  return g;
}

namespace {

void add_gram_rows(VerificationReport& report, const std::string& prefix, const std::vector<TestFunction>& phis,
                   const GramEstimate& est, const Eigen::MatrixXcd& target, double z_threshold) {
  const auto m = static_cast<Eigen::Index>(phis.size());
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      const std::string name = prefix + "<" + phis[a].name + "," + phis[b].name + ">";
      const cplx v = est.value(a, b), t = target(a, b);
      const double ere = est.std_error_re(a, b), eim = est.std_error_im(a, b);
      const double et = kPairingFloor * std::max(1.0, std::abs(t));
      report.add_check(name + ".re", v.real(), t.real(), ere, z_score(v.real(), ere, t.real(), et), z_threshold);
      if (a != b)
        report.add_check(name + ".im", v.imag(), t.imag(), eim, z_score(v.imag(), eim, t.imag(), et), z_threshold);
    }
  }
}

}  // namespace

VerificationReport resolution_check(const std::vector<TestFunction>& phis, double s, double hbar, int n,
                                    std::size_t samples, std::uint64_t seed, double z_threshold) {
  VerificationReport report;
  report.experiment = "resolution";
  report.seed = seed;
  report.add_input("s", fmt(s));
  report.add_input("hbar", fmt(hbar));
  report.add_input("N", std::to_string(n));
  report.add_input("samples", std::to_string(samples));
  const GramEstimate est = estimate_gram(phis, s, hbar, n, samples, seed);
  add_gram_rows(report, "gram", phis, est, exact_gram(phis, s), z_threshold);
  return report;
}

VerificationReport nu_limit_study(const std::vector<TestFunction>& phis, double hbar, const std::vector<double>& s_values,
                                  int n, std::size_t samples, std::uint64_t seed, double z_threshold) {
  require_hbar(hbar);
  if (s_values.empty()) throw std::invalid_argument("nu_limit_study needs at least one s");
  for (std::size_t k = 0; k < s_values.size(); ++k) {
    require_s(s_values[k], hbar);
    if (k > 0 && !(s_values[k] > s_values[k - 1])) throw std::invalid_argument("s schedule must increase");
  }
  VerificationReport report;
  report.experiment = "nu-limit";
  report.seed = seed;
  report.add_input("hbar", fmt(hbar));
  std::string sched;
  for (double s : s_values) sched += (sched.empty() ? "" : ",") + fmt(s);
  report.add_input("s", sched);
  report.add_input("N", std::to_string(n));
  report.add_input("samples", std::to_string(samples));

  const Eigen::MatrixXcd haar = exact_gram(phis, kInfiniteTime);
  const std::size_t m = phis.size();
  // deviation[i][k] = |G_ii(s_k) - Haar_ii|
  std::vector<std::vector<double>> dev(m), dev_se(m);
  for (double s : s_values) {
    const std::string tag = "s=" + fmt(s) + ".";
    const MomentEstimate pass = gram_pass(phis, s, hbar, n, samples, seed, true);
    const GramEstimate est = unpack_gram(pass, m);
    const Eigen::MatrixXcd finite = exact_gram(phis, s);
    for (std::size_t i = 0; i < m; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double d = est.value(ii, ii).real() - haar(ii, ii).real();
      const double se = est.std_error_re(ii, ii);
      dev[i].push_back(std::abs(d));
      dev_se[i].push_back(se);
      // Against the exact finite-s deviation <phi, phi>_{rho_s} - <phi, phi>_Haar.
      const double exact = finite(ii, ii).real() - haar(ii, ii).real();
      const double et = kPairingFloor * std::max(1.0, std::abs(finite(ii, ii)));
      report.add_check(tag + phis[i].name + ".deviation", d, exact, se, z_score(d, se, exact, et), z_threshold);
    }
    // Re Z has coordinate variance s - hbar/2, so h(Re Z) approximates rho_{s - hbar/2}.
    const double r = s - hbar / 2.0;
    const double mean = pass.mean.back(), se = pass.std_error.back();
    const double target = 2.0 * std::exp(-r * casimir(2) / 2.0);
    report.add_check(tag + "E[chi2(h(Re Z))]", mean, target, se, z_score(mean, se, target, 0.0), z_threshold);
  }

  for (std::size_t i = 0; i < m; ++i) {
    const auto& d = dev[i];
    const auto& e = dev_se[i];
    const bool identically_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; }) &&
                                  std::all_of(e.begin(), e.end(), [](double v) { return v == 0.0; });
    if (identically_zero) {
      report.add_check(phis[i].name + ".deviation_zero", 0.0, 0.0, 0.0, 0.0, 0.0);
      continue;
    }
    // Each step may not grow by more than z_threshold stderr; score is the growth in stderr units.
    for (std::size_t k = 1; k < d.size(); ++k) {
      const double se = std::hypot(e[k], e[k - 1]);
      const double growth = se > 0.0 ? std::max(0.0, (d[k] - d[k - 1]) / se) : (d[k] > d[k - 1] ? INFINITY : 0.0);
      report.add_check(phis[i].name + ".step" + std::to_string(k), d[k], d[k - 1], se, growth, z_threshold);
    }
    // Overall decrease must exceed z_threshold stderr; score is the shortfall.
    const double se = std::hypot(e.front(), e.back());
    const double margin = se > 0.0 ? (d.front() - d.back()) / se : (d.front() > d.back() ? INFINITY : 0.0);
    report.add_check(phis[i].name + ".decrease", d.back(), d.front(), se, std::max(0.0, z_threshold - margin), 0.0);
  }
  return report;
}

cplx heat_evolve_exact(const BandLimitedFunction& phi, const ComplexLatticeConnection& z, double hbar, int gh_order) {
  require_hbar(hbar);
  const int n = z.size();
  if (n < 1) throw std::invalid_argument("heat_evolve_exact needs at least one link");
  const auto [x, w] = gauss_hermite(gh_order);
  const double sigma = std::sqrt(hbar / n);
  const cplx inv_n = 1.0 / static_cast<double>(n);
  const double norm = std::pow(std::numbers::pi, -1.5);

  cplx total = 0.0;
  for (int rep = 1; rep <= phi.cutoff(); ++rep) {
    const Eigen::MatrixXcd& block = phi.block(rep);
    if (block.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(rep, rep);
    for (const auto& link : z.links) {
      const ComplexAlgebraVector mean = inv_n * link;
      Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(rep, rep);
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
          for (std::size_t k = 0; k < x.size(); ++k) {
            ComplexAlgebraVector v = mean;
            v.c[0] += std::sqrt(2.0) * sigma * x[i];
            v.c[1] += std::sqrt(2.0) * sigma * x[j];
            v.c[2] += std::sqrt(2.0) * sigma * x[k];
            avg += (w[i] * w[j] * w[k] * norm) * irrep_matrix(rep, exp_complex(v));
          }
        }
      }
      product = avg * product;
    }
    total += std::sqrt(static_cast<double>(rep)) * (block.array() * product.array()).sum();
  }
  return total;
}

VerificationReport theorem4_check(const TestFunction& phi, double s, double hbar, int n,
                                  const ComplexLatticeConnection& z, std::size_t samples, std::uint64_t seed,
                                  double z_threshold) {
  require_hbar(hbar);
  require_s(s, hbar);
  if (z.size() != n) throw ShapeMismatch("theorem4_check: Z has " + std::to_string(z.size()) + " links, N = " +
                                         std::to_string(n));
  VerificationReport report;
  report.experiment = "theorem4";
  report.seed = seed;
  report.add_input("phi", phi.name);
  report.add_input("s", fmt(s));
  report.add_input("hbar", fmt(hbar));
  report.add_input("N", std::to_string(n));
  report.add_input("samples", std::to_string(samples));

  const cplx right = c_transform_K(phi.f, hbar, holonomy_complex(z));
  const auto left = heat_evolve_mc([&](const ComplexLatticeConnection& c) { return phi.f(holonomy_complex(c)); }, z,
                                   hbar, samples, seed);
  const cplx exact = heat_evolve_exact(phi.f, z, hbar);
  const std::string p = phi.name + ".";
  // Both deterministic targets carry roundoff, which matters when a part vanishes.
  const double er = kPairingFloor * std::max(1.0, std::abs(right));
  const double ee = kPairingFloor * std::max(1.0, std::abs(exact));

  report.add_info(p + "right.re", right.real());
  report.add_info(p + "right.im", right.imag());
  report.add_check(p + "left-right.re", left.value.real(), right.real(), left.std_error_re,
                   z_score(left.value.real(), left.std_error_re, right.real(), er), z_threshold);
  report.add_check(p + "left-right.im", left.value.imag(), right.imag(), left.std_error_im,
                   z_score(left.value.imag(), left.std_error_im, right.imag(), er), z_threshold);
  // The lattice expectation itself, computed deterministically.
  report.add_check(p + "left-lattice.re", left.value.real(), exact.real(), left.std_error_re,
                   z_score(left.value.real(), left.std_error_re, exact.real(), ee), z_threshold);
  report.add_check(p + "left-lattice.im", left.value.imag(), exact.imag(), left.std_error_im,
                   z_score(left.value.imag(), left.std_error_im, exact.imag(), ee), z_threshold);
  report.add_info(p + "discretization", std::abs(exact - right));
  return report;
}

VerificationReport theorem4_trend(const TestFunction& phi, double hbar,
                                  const std::function<ComplexAlgebraVector(double)>& z, const std::vector<int>& sizes) {
  require_hbar(hbar);
  VerificationReport report;
  report.experiment = "theorem4-trend";
  report.add_input("phi", phi.name);
  report.add_input("hbar", fmt(hbar));
  std::vector<double> residual;
  for (int n : sizes) {
    std::vector<ComplexAlgebraVector> links;
    for (int k = 0; k < n; ++k) links.push_back(z((k + 0.5) / n));
    const ComplexLatticeConnection zn(std::move(links));
    const cplx right = c_transform_K(phi.f, hbar, holonomy_complex(zn));
    const double r = std::abs(heat_evolve_exact(phi.f, zn, hbar) - right);
    report.add_info(phi.name + ".N=" + std::to_string(n) + ".residual", r);
    residual.push_back(r);
  }
  for (std::size_t k = 1; k < residual.size(); ++k) {
    const double growth = std::max(0.0, residual[k] - residual[k - 1]);
    report.add_check(phi.name + ".decreasing" + std::to_string(k), residual[k], residual[k - 1], 0.0, growth, 0.0);
  }
  return report;
}

std::vector<ComplexGroupElement> gauge_links(const std::vector<ComplexGroupElement>& sites,
                                             const std::vector<ComplexGroupElement>& links) {
  if (sites.size() != links.size() + 1)
    throw ShapeMismatch("gauge_links: " + std::to_string(sites.size()) + " sites for " +
                        std::to_string(links.size()) + " links");
  std::vector<ComplexGroupElement> out;
  out.reserve(links.size());
  for (std::size_t k = 1; k < sites.size(); ++k) out.push_back(sites[k] * links[k - 1] * sites[k - 1].inverse());
  return out;
}

std::vector<ComplexGroupElement> real_translation_gauge(int n, const std::function<GroupElement(double)>& u,
                                                        const ComplexGroupElement& c) {
  if (n < 2) throw std::invalid_argument("real_translation_gauge needs N >= 2");
  std::vector<ComplexGroupElement> sites(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k < n; ++k) sites[static_cast<std::size_t>(k)] = ComplexGroupElement(u(double(k) / n).matrix()) * c;
  return sites;
}

VerificationReport collapse_check(const TestFunction& phi, double hbar, const ComplexLatticeConnection& z,
                                  const std::vector<ComplexGroupElement>& sites, std::size_t samples,
                                  std::uint64_t seed, bool exact_right, double z_threshold) {
  require_hbar(hbar);
  const int n = z.size();
  VerificationReport report;
  report.experiment = "collapse";
  report.seed = seed;
  report.add_input("phi", phi.name);
  report.add_input("hbar", fmt(hbar));
  report.add_input("N", std::to_string(n));

  const auto v = link_variables(z);
  const auto vw = gauge_links(sites, v);
  std::vector<ComplexAlgebraVector> wl;
  for (const auto& l : vw) wl.push_back(cplx(n) * log_complex(l));
  const ComplexLatticeConnection w(std::move(wl));

  const ComplexGroupElement hz = holonomy_of_links(v), hw = holonomy_of_links(vw);
  const ComplexGroupElement hw_log = holonomy_complex(w);
  report.add_check("holonomy.links", 0.0, 0.0, 0.0, (hz.matrix() - hw.matrix()).frobenius(),
                   exact_right ? 0.0 : 1e-12);
  report.add_check("holonomy.log", 0.0, 0.0, 0.0, (hz.matrix() - hw_log.matrix()).frobenius(), 1e-12);

  const cplx rz = c_transform_K(phi.f, hbar, hz), rw = c_transform_K(phi.f, hbar, hw);
  report.add_check(phi.name + ".right", rw.real(), rz.real(), 0.0, std::abs(rz - rw),
                   exact_right ? 0.0 : 1e-10);

  auto f = [&](const ComplexLatticeConnection& c) { return phi.f(holonomy_complex(c)); };
  const auto lz = heat_evolve_mc(f, z, hbar, samples, seed);
  const auto lw = heat_evolve_mc(f, w, hbar, samples, seed + 1);
  report.add_check(phi.name + ".left.re", lw.value.real(), lz.value.real(), std::hypot(lz.std_error_re, lw.std_error_re),
                   z_score(lw.value.real(), lw.std_error_re, lz.value.real(), lz.std_error_re), z_threshold);
  report.add_check(phi.name + ".left.im", lw.value.imag(), lz.value.imag(), std::hypot(lz.std_error_im, lw.std_error_im),
                   z_score(lw.value.imag(), lw.std_error_im, lz.value.imag(), lz.std_error_im), z_threshold);
  return report;
}

}  // namespace ymcyl
