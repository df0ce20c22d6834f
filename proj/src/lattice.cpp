#include "ymcyl/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace ymcyl {

namespace {

void require_same_size(int a, int b, const char* what) {
  if (a != b) {
    throw ShapeMismatch(std::string(what) + ": sizes " + std::to_string(a) + " and " + std::to_string(b) +
                        " do not match");
  }
}

void require_links(int n) {
  if (n < 1) throw std::invalid_argument("a lattice connection needs at least one link");
}

LatticeConnection act(const LatticeGaugeTransform& g, const LatticeConnection& a) {
  require_same_size(g.size(), a.size(), "gauge transform and connection");
  const int n = a.size();
  std::vector<AlgebraVector> out(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const GroupElement u = g.site(k) * link_transport(a.links[static_cast<std::size_t>(k - 1)], n) * g.site(k - 1).inverse();
    out[static_cast<std::size_t>(k - 1)] = static_cast<double>(n) * log_group(u);
  }
  return LatticeConnection(std::move(out));
}

}  // namespace

LatticeConnection LatticeConnection::zero(int n) {
  require_links(n);
  return LatticeConnection(std::vector<AlgebraVector>(static_cast<std::size_t>(n)));
}

LatticeConnection LatticeConnection::constant(int n, const AlgebraVector& x) {
  require_links(n);
  return LatticeConnection(std::vector<AlgebraVector>(static_cast<std::size_t>(n), x));
}

LatticeConnection LatticeConnection::sample(int n, const std::function<AlgebraVector(double)>& a) {
  require_links(n);
  std::vector<AlgebraVector> links(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) links[static_cast<std::size_t>(k)] = a((k + 0.5) / n);
  return LatticeConnection(std::move(links));
}

LatticeConnection LatticeConnection::from_coordinates(const std::vector<double>& x) {
  if (x.empty() || x.size() % 3 != 0) throw ShapeMismatch("coordinate count must be a positive multiple of 3");
  const std::size_t n = x.size() / 3;
  const double scale = std::sqrt(static_cast<double>(n));
  std::vector<AlgebraVector> links(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < 3; ++a) links[k].c[a] = scale * x[3 * k + a];
  return LatticeConnection(std::move(links));
}

double LatticeConnection::norm_sq() const {
  double sum = 0.0;
  for (const auto& l : links) sum += l.norm_sq();
  return sum / static_cast<double>(links.size());
}

double LatticeConnection::norm() const { return std::sqrt(norm_sq()); }

std::vector<double> LatticeConnection::coordinates() const {
  const double scale = 1.0 / std::sqrt(static_cast<double>(links.size()));
  std::vector<double> x;
  x.reserve(3 * links.size());
  for (const auto& l : links)
    for (double c : l.c) x.push_back(scale * c);
  return x;
}

LatticeConnection LatticeConnection::refine() const {
  std::vector<AlgebraVector> out;
  out.reserve(2 * links.size());
  for (const auto& l : links) {
    out.push_back(l);
    out.push_back(l);
  }
  return LatticeConnection(std::move(out));
}

LatticeConnection operator+(const LatticeConnection& a, const LatticeConnection& b) {
  require_same_size(a.size(), b.size(), "connection sum");
  LatticeConnection out = a;
  for (std::size_t k = 0; k < out.links.size(); ++k) out.links[k] = out.links[k] + b.links[k];
  return out;
}

LatticeConnection operator-(const LatticeConnection& a, const LatticeConnection& b) { return a + (-1.0) * b; }

LatticeConnection operator*(double t, const LatticeConnection& a) {
  LatticeConnection out = a;
  for (auto& l : out.links) l = t * l;
  return out;
}

ComplexLatticeConnection::ComplexLatticeConnection(const LatticeConnection& a, const LatticeConnection& p) {
  require_same_size(a.size(), p.size(), "real and imaginary parts");
  links.reserve(a.links.size());
  for (std::size_t k = 0; k < a.links.size(); ++k) links.emplace_back(a.links[k], p.links[k]);
}

LatticeConnection ComplexLatticeConnection::real() const {
  std::vector<AlgebraVector> out;
  for (const auto& z : links) out.push_back(z.real());
  return LatticeConnection(std::move(out));
}

LatticeConnection ComplexLatticeConnection::imag() const {
  std::vector<AlgebraVector> out;
  for (const auto& z : links) out.push_back(z.imag());
  return LatticeConnection(std::move(out));
}

LatticeGaugeTransform LatticeGaugeTransform::based_loop(std::vector<GroupElement> sites, double tol) {
  if (sites.size() < 2) throw ShapeMismatch("a gauge transform needs at least two sites");
  const Mat2 id = Mat2::identity();
  if (distance(sites.front().matrix(), id) > tol || distance(sites.back().matrix(), id) > tol) {
    throw std::invalid_argument("based loop must equal the identity at both ends");
  }
  return LatticeGaugeTransform(std::move(sites), true);
}

LatticeGaugeTransform LatticeGaugeTransform::path(std::vector<GroupElement> sites, double tol) {
  if (sites.size() < 2) throw ShapeMismatch("a gauge transform needs at least two sites");
  if (distance(sites.front().matrix(), Mat2::identity()) > tol) {
    throw std::invalid_argument("path transform must start at the identity");
  }
  const bool based = distance(sites.back().matrix(), Mat2::identity()) <= tol;
  return LatticeGaugeTransform(std::move(sites), based);
}

LatticeGaugeTransform LatticeGaugeTransform::path_from(int n, const std::function<GroupElement(double)>& g) {
  require_links(n);
  std::vector<GroupElement> sites;
  for (int k = 0; k <= n; ++k) sites.push_back(g(static_cast<double>(k) / n));
  return path(std::move(sites));
}

GroupElement link_transport(const AlgebraVector& a, int n) { return exp_group((1.0 / n) * a); }

GroupElement holonomy(const LatticeConnection& a) {
  require_links(a.size());
  GroupElement h;
  for (const auto& l : a.links) h = link_transport(l, a.size()) * h;
  return h;
}

std::vector<ComplexGroupElement> link_variables(const ComplexLatticeConnection& z) {
  std::vector<ComplexGroupElement> v;
  v.reserve(z.links.size());
  const cplx inv_n = 1.0 / static_cast<double>(z.size());
  for (const auto& l : z.links) v.push_back(exp_complex(inv_n * l));
  return v;
}

ComplexGroupElement holonomy_of_links(const std::vector<ComplexGroupElement>& links) {
  ComplexGroupElement h;
  for (const auto& v : links) h = v * h;
  return h;
}

ComplexGroupElement holonomy_complex(const ComplexLatticeConnection& z) {
  require_links(z.size());
  return holonomy_of_links(link_variables(z));
}

LatticeConnection gauge_act(const LatticeGaugeTransform& g, const LatticeConnection& a) {
  if (!g.is_based_loop()) throw std::invalid_argument("gauge_act needs a based loop; use path_group_act");
  return act(g, a);
}

LatticeConnection path_group_act(const LatticeGaugeTransform& g, const LatticeConnection& a) { return act(g, a); }

ComplexLatticeConnection complex_gauge_act(const std::vector<ComplexGroupElement>& sites,
                                           const ComplexLatticeConnection& z) {
  require_same_size(static_cast<int>(sites.size()) - 1, z.size(), "complex gauge transform and connection");
  const auto v = link_variables(z);
  const double n = static_cast<double>(z.size());
  std::vector<ComplexAlgebraVector> out;
  out.reserve(v.size());
  for (std::size_t k = 1; k < sites.size(); ++k) {
    const ComplexGroupElement u = sites[k] * v[k - 1] * sites[k - 1].inverse();
    out.push_back(cplx(n) * log_complex(u));
  }
  return ComplexLatticeConnection(std::move(out));
}

double link_distance(const LatticeConnection& a, const LatticeConnection& b) {
  require_same_size(a.size(), b.size(), "link distance");
  const int n = a.size();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const GroupElement d = link_transport(a.links[static_cast<std::size_t>(k)], n).inverse() *
                           link_transport(b.links[static_cast<std::size_t>(k)], n);
    sum += (static_cast<double>(n) * log_group(d)).norm_sq();
  }
  return std::sqrt(sum / n);
}

double flat_distance(const LatticeConnection& a, const LatticeConnection& b) { return (a - b).norm(); }

LatticeConnection sample_Ps(int n, double s, CounterRng& rng) {
  require_links(n);
  if (!(s > 0.0)) throw std::invalid_argument("sample_Ps needs s > 0");
  // x_{k,a} ~ N(0, s) and A_{k,a} = sqrt(N) x_{k,a}.
  const double sd = std::sqrt(s * n);
  std::vector<AlgebraVector> links(static_cast<std::size_t>(n));
  for (auto& l : links)
    for (double& c : l.c) c = sd * rng.normal();
  return LatticeConnection(std::move(links));
}

LatticeConnection sample_Ps(int n, double s, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  return sample_Ps(n, s, rng);
}

ComplexLatticeConnection sample_Msh(int n, double s, double hbar, CounterRng& rng) {
  require_links(n);
  if (!(hbar > 0.0) || !(s > hbar / 2.0)) throw std::invalid_argument("sample_Msh needs hbar > 0 and s > hbar/2");
  const double sx = std::sqrt((2.0 * s - hbar) / 2.0 * n);
  const double sy = std::sqrt(hbar / 2.0 * n);
  std::vector<ComplexAlgebraVector> links(static_cast<std::size_t>(n));
  for (auto& l : links) {
    AlgebraVector re, im;
    for (double& c : re.c) c = sx * rng.normal();
    for (double& c : im.c) c = sy * rng.normal();
    l = ComplexAlgebraVector(re, im);
  }
  return ComplexLatticeConnection(std::move(links));
}

ComplexLatticeConnection sample_Msh(int n, double s, double hbar, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  return sample_Msh(n, s, hbar, rng);
}

ClassicalState free_flow(const ClassicalState& state, double t) { return {state.A + t * state.P, state.P}; }

double lattice_laplacian(const CylinderFunction& f, const LatticeConnection& a, double eta) {
  std::vector<double> x = a.coordinates();
  const double f0 = f(a);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + eta;
    const double fp = f(LatticeConnection::from_coordinates(x));
    x[i] = xi - eta;
    const double fm = f(LatticeConnection::from_coordinates(x));
    x[i] = xi;
    sum += (fp - 2.0 * f0 + fm) / (eta * eta);
  }
  return sum;
}

double lattice_laplacian_holonomy(const std::function<double(const GroupElement&)>& phi, const LatticeConnection& a,
                                  double eta) {
  const int n = a.size();
  require_links(n);
  std::vector<GroupElement> u(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) u[static_cast<std::size_t>(k)] = link_transport(a.links[static_cast<std::size_t>(k)], n);
  // before[k] = U_k ... U_1 (identity for k = 0); after[k] = U_N ... U_{k+1}.
  std::vector<GroupElement> before(static_cast<std::size_t>(n) + 1), after(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) before[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k - 1)] * before[static_cast<std::size_t>(k - 1)];
  for (int k = n - 1; k >= 0; --k) after[static_cast<std::size_t>(k)] = after[static_cast<std::size_t>(k + 1)] * u[static_cast<std::size_t>(k)];

  const double f0 = phi(before[static_cast<std::size_t>(n)]);
  const double shift = eta * std::sqrt(static_cast<double>(n));
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const AlgebraVector& link = a.links[static_cast<std::size_t>(k - 1)];
    for (int c = 0; c < 3; ++c) {
      AlgebraVector plus = link, minus = link;
      plus.c[static_cast<std::size_t>(c)] += shift;
      minus.c[static_cast<std::size_t>(c)] -= shift;
      const double fp = phi(after[static_cast<std::size_t>(k)] * link_transport(plus, n) * before[static_cast<std::size_t>(k - 1)]);
      const double fm = phi(after[static_cast<std::size_t>(k)] * link_transport(minus, n) * before[static_cast<std::size_t>(k - 1)]);
      sum += (fp - 2.0 * f0 + fm) / (eta * eta);
    }
  }
  return sum;
}

ComplexEstimate heat_evolve_mc(const ComplexCylinderFunction& f, const ComplexLatticeConnection& z, double hbar,
                               std::size_t samples, std::uint64_t seed, bool antithetic) {
  if (!(hbar > 0.0)) throw std::invalid_argument("heat_evolve_mc needs hbar > 0");
  const int n = z.size();
  require_links(n);
  const double sd = std::sqrt(hbar * n);
  const auto est = sample_moments(samples, 2, [&](std::size_t i, double* out) {
    CounterRng rng(seed, i);
    ComplexLatticeConnection plus = z, minus = z;
    for (std::size_t k = 0; k < z.links.size(); ++k) {
      for (std::size_t a = 0; a < 3; ++a) {
        const double w = sd * rng.normal();
        plus.links[k].c[a] += w;
        minus.links[k].c[a] -= w;
      }
    }
    cplx v = f(plus);
    if (antithetic) v = 0.5 * (v + f(minus));
    out[0] = v.real();
    out[1] = v.imag();
  });
  return {cplx(est.mean[0], est.mean[1]), est.std_error[0], est.std_error[1], est.count};
}

VerificationReport submersion_demo(const RadialProfile& profile, double r0, double step, double tolerance,
                                   double angle) {
  if (!(r0 > 0.0)) throw std::invalid_argument("submersion_demo needs r0 > 0");
  const auto& f = profile.f;
  const double h = step;
  const double x = r0 * std::cos(angle), y = r0 * std::sin(angle);
  auto radial = [&](double px, double py) { return f(std::hypot(px, py)); };

  const double lap2d = (radial(x + h, y) + radial(x - h, y) + radial(x, y + h) + radial(x, y - h) - 4.0 * radial(x, y)) / (h * h);
  const double d1 = (f(r0 + h) - f(r0 - h)) / (2.0 * h);
  const double d2 = (f(r0 + h) - 2.0 * f(r0) + f(r0 - h)) / (h * h);
  const double radial_form = d2 + d1 / r0;
  auto log_vol = [](double r) { return std::log(2.0 * std::numbers::pi * r); };
  const double dlog_vol = (log_vol(r0 + h) - log_vol(r0 - h)) / (2.0 * h);
  const double submersion_form = d2 + dlog_vol * d1;

  VerificationReport report;
  report.experiment = "submersion-demo";
  report.add_input("profile", profile.name);
  report.add_input("r0", std::to_string(r0));
  report.add_info(profile.name + ".laplacian_2d", lap2d);
  report.add_info(profile.name + ".radial_formula", radial_form);
  report.add_info(profile.name + ".volume_correction", submersion_form);
  report.add_check(profile.name + ".laplacian_2d-radial_formula", lap2d, radial_form, 0.0, lap2d - radial_form, tolerance);
  report.add_check(profile.name + ".laplacian_2d-volume_correction", lap2d, submersion_form, 0.0,
                   lap2d - submersion_form, tolerance);
  report.add_check(profile.name + ".radial_formula-volume_correction", radial_form, submersion_form, 0.0,
                   radial_form - submersion_form, tolerance);
  return report;
}

void write_ensemble_csv(std::ostream& out, const std::vector<LatticeConnection>& samples, std::size_t first_index) {
  if (samples.empty()) return;
  const int n = samples.front().size();
  out << "sample";
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < 3; ++a) out << ",x_" << k << "_" << a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out << ",h" << i << j << "_re,h" << i << j << "_im";
  out << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (std::size_t s = 0; s < samples.size(); ++s) {
    require_same_size(samples[s].size(), n, "ensemble");
    out << first_index + s;
    for (double v : samples[s].coordinates()) put(v);
    const GroupElement h = holonomy(samples[s]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        put(h.matrix()(i, j).real());
        put(h.matrix()(i, j).imag());
      }
    out << "\n";
  }
}

}  // namespace ymcyl
