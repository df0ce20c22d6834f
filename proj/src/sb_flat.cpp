#include "ymcyl/sb_flat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ymcyl/rng.hpp"

namespace ymcyl {

namespace {

cplx bilinear_sq(const ComplexVector& z) {
  cplx sum = 0.0;
  for (const cplx& v : z) sum += v * v;
  return sum;
}

void check_dim(std::size_t got, int want) {
  if (static_cast<int>(got) != want) {
    throw InvalidParams("dimension mismatch: got " + std::to_string(got) + ", expected " + std::to_string(want));
  }
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// E[x^n] for x ~ N(0, var).
double gaussian_moment(int n, double var) {
  if (n % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = n - 1; k > 0; k -= 2) m *= k;
  return m * std::pow(var, n / 2);
}

// E[(x + i y)^a (x - i y)^b] for independent x ~ N(0, vx), y ~ N(0, vy).
cplx mixed_moment(int a, int b, double vx, double vy) {
  const cplx i{0.0, 1.0};
  cplx sum = 0.0;
  for (int j = 0; j <= a; ++j) {
    for (int k = 0; k <= b; ++k) {
      const double binom = factorial(a) / (factorial(j) * factorial(a - j)) * factorial(b) / (factorial(k) * factorial(b - k));
      sum += binom * std::pow(i, a - j) * std::pow(-i, b - k) * gaussian_moment(j + k, vx) *
             gaussian_moment(a - j + b - k, vy);
    }
  }
  return sum;
}

// log of int exp(-alpha x^2 + beta x + gamma) dx; alpha > 0.
double log_gaussian_integral(double alpha, double beta, double gamma) {
  return 0.5 * std::log(std::numbers::pi / alpha) + beta * beta / (4.0 * alpha) + gamma;
}

NormEstimate from_log(double log_value, double abs_sq_prefactor) {
  if (abs_sq_prefactor == 0.0) return {0.0, 0.0, true};
  const double v = abs_sq_prefactor * std::exp(log_value);
  // An overflowing moment is treated as failing the growth test.
  if (!std::isfinite(v)) return {v, 0.0, false};
  return {v, 0.0, true};
}

NormEstimate not_integrable() { return {std::numeric_limits<double>::infinity(), 0.0, false}; }

// For F of width w, Re (z - m)^2 = (x - m)^2 - y^2, so each axis of |F|^2
// carries a factor e^{y^2/w} against (pi hbar)^{-1/2} e^{-y^2/hbar} dy.
double log_y_factor(double w, double hbar, bool& ok) {
  const double alpha = 1.0 / hbar - 1.0 / w;
  ok = alpha > 0.0;
  if (!ok) return 0.0;
  return log_gaussian_integral(alpha, 0.0, 0.0) - 0.5 * std::log(std::numbers::pi * hbar);
}

}  // namespace

void MeasureParams::validate() const {
  if (dim < 1) throw InvalidParams("dimension must be >= 1");
  if (!(hbar > 0.0)) throw InvalidParams("hbar must be positive");
  if (!(s > hbar / 2.0)) {
    throw InvalidParams("need s > hbar/2, got s = " + std::to_string(s) + ", hbar = " + std::to_string(hbar));
  }
}

cplx ExponentialFunction::operator()(const ComplexVector& z) const {
  check_dim(z.size(), dim());
  cplx e = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) e += a[k] * z[k];
  return prefactor * std::exp(e);
}

PolynomialFunction PolynomialFunction::monomial(std::vector<int> alpha, cplx coefficient) {
  PolynomialFunction p;
  p.dim = static_cast<int>(alpha.size());
  p.terms[std::move(alpha)] = coefficient;
  return p;
}

int PolynomialFunction::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms) {
    int total = 0;
    for (int k : alpha) total += k;
    if (c != 0.0) d = std::max(d, total);
  }
  return d;
}

cplx PolynomialFunction::operator()(const ComplexVector& z) const {
  check_dim(z.size(), dim);
  cplx sum = 0.0;
  for (const auto& [alpha, c] : terms) {
    cplx term = c;
    for (std::size_t k = 0; k < alpha.size(); ++k) term *= std::pow(z[k], alpha[k]);
    sum += term;
  }
  return sum;
}

cplx GaussianFunction::operator()(const ComplexVector& z) const {
  check_dim(z.size(), dim());
  cplx q = 0.0;
  for (std::size_t k = 0; k < center.size(); ++k) q += (z[k] - center[k]) * (z[k] - center[k]);
  return prefactor * std::exp(-q / (2.0 * width));
}

ExponentialFunction heat_transform(const ExponentialFunction& f, double hbar) {
  double a2 = 0.0;
  for (double v : f.a) a2 += v * v;
  return {f.prefactor * std::exp(hbar * a2 / 2.0), f.a};
}

PolynomialFunction heat_transform(const PolynomialFunction& f, double hbar) {
  // e^{h D^2/2} x^n = sum_j n! / (j! (n-2j)!) (h/2)^j x^{n-2j}, one axis at a time.
  PolynomialFunction out;
  out.dim = f.dim;
  for (const auto& [alpha, c] : f.terms) {
    std::vector<std::pair<std::vector<int>, cplx>> partial{{std::vector<int>(alpha.size(), 0), c}};
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      std::vector<std::pair<std::vector<int>, cplx>> next;
      const int n = alpha[k];
      for (int j = 0; 2 * j <= n; ++j) {
        const double w = factorial(n) / (factorial(j) * factorial(n - 2 * j)) * std::pow(hbar / 2.0, j);
        for (const auto& [beta, v] : partial) {
          auto b = beta;
          b[k] = n - 2 * j;
          next.emplace_back(std::move(b), v * w);
        }
      }
      partial = std::move(next);
    }
    for (auto& [beta, v] : partial) out.terms[beta] += v;
  }
  return out;
}

GaussianFunction heat_transform(const GaussianFunction& f, double hbar) {
  const double u = f.width + hbar;
  return {f.prefactor * std::pow(f.width / u, f.dim() / 2.0), f.center, u};
}

cplx c_transform_quadrature(const HolomorphicFunction& f, double hbar, const ComplexVector& z, int order) {
  const auto [t, w] = gauss_hermite(order);
  const std::size_t d = z.size();
  const double scale = std::sqrt(2.0 * hbar);
  std::vector<std::size_t> idx(d, 0);
  ComplexVector point(d);
  cplx sum = 0.0;
  // Normalized by the computed weight sum so constants are reproduced exactly.
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      point[k] = z[k] + scale * t[idx[k]];
      weight *= w[idx[k]];
    }
    sum += weight * f(point);
    total += weight;
    std::size_t k = 0;
    while (k < d && ++idx[k] == t.size()) idx[k++] = 0;
    if (k == d) break;
  }
  return sum / total;
}

NormEstimate norm_sq_Ps(const ExponentialFunction& f, const MeasureParams& params) {
  params.validate();
  check_dim(f.a.size(), params.dim);
  double a2 = 0.0;
  for (double v : f.a) a2 += v * v;
  return from_log(2.0 * params.s * a2, std::norm(f.prefactor));
}

NormEstimate norm_sq_Ps(const PolynomialFunction& f, const MeasureParams& params) {
  params.validate();
  check_dim(static_cast<std::size_t>(f.dim), params.dim);
  cplx sum = 0.0;
  for (const auto& [alpha, ca] : f.terms) {
    for (const auto& [beta, cb] : f.terms) {
      double m = 1.0;
      for (std::size_t k = 0; k < alpha.size() && m != 0.0; ++k) m *= gaussian_moment(alpha[k] + beta[k], params.s);
      sum += ca * std::conj(cb) * m;
    }
  }
  return {sum.real(), 0.0, true};
}

NormEstimate norm_sq_Ps(const GaussianFunction& f, const MeasureParams& params) {
  params.validate();
  check_dim(f.center.size(), params.dim);
  const double w = f.width, s = params.s;
  double log_value = 0.0;
  for (double m : f.center) {
    log_value += log_gaussian_integral(1.0 / w + 1.0 / (2.0 * s), 2.0 * m / w, -m * m / w) -
                 0.5 * std::log(2.0 * std::numbers::pi * s);
  }
  return from_log(log_value, std::norm(f.prefactor));
}

NormEstimate norm_sq_Msh(const ExponentialFunction& F, const MeasureParams& params) {
  params.validate();
  check_dim(F.a.size(), params.dim);
  double a2 = 0.0;
  for (double v : F.a) a2 += v * v;
  // |e^{a.z}|^2 = e^{2 a.x}, and the y integral is 1.
  return from_log(params.r() * a2, std::norm(F.prefactor));
}

NormEstimate norm_sq_Msh(const PolynomialFunction& F, const MeasureParams& params) {
  params.validate();
  check_dim(static_cast<std::size_t>(F.dim), params.dim);
  const double vx = params.r() / 2.0, vy = params.hbar / 2.0;
  cplx sum = 0.0;
  for (const auto& [alpha, ca] : F.terms) {
    for (const auto& [beta, cb] : F.terms) {
      cplx m = 1.0;
      for (std::size_t k = 0; k < alpha.size(); ++k) m *= mixed_moment(alpha[k], beta[k], vx, vy);
      sum += ca * std::conj(cb) * m;
    }
  }
  return {sum.real(), 0.0, true};
}

NormEstimate norm_sq_Msh(const GaussianFunction& F, const MeasureParams& params) {
  params.validate();
  check_dim(F.center.size(), params.dim);
  const double w = F.width, r = params.r();
  bool ok = true;
  const double y = log_y_factor(w, params.hbar, ok);
  if (!ok) return not_integrable();
  double log_value = 0.0;
  for (double m : F.center) {
    log_value += log_gaussian_integral(1.0 / w + 1.0 / r, 2.0 * m / w, -m * m / w) -
                 0.5 * std::log(std::numbers::pi * r) + y;
  }
  return from_log(log_value, std::norm(F.prefactor));
}

NormEstimate norm_sq_dx(const ExponentialFunction& f) {
  if (f.prefactor == 0.0) return {0.0, 0.0, true};
  return not_integrable();
}

NormEstimate norm_sq_dx(const PolynomialFunction& f) {
  for (const auto& [alpha, c] : f.terms)
    if (c != 0.0) return not_integrable();
  return {0.0, 0.0, true};
}

NormEstimate norm_sq_dx(const GaussianFunction& f) {
  return from_log(f.dim() * 0.5 * std::log(std::numbers::pi * f.width), std::norm(f.prefactor));
}

NormEstimate norm_sq_nu(const ExponentialFunction& F, double) { return norm_sq_dx(F); }

NormEstimate norm_sq_nu(const PolynomialFunction& F, double) { return norm_sq_dx(F); }

NormEstimate norm_sq_nu(const GaussianFunction& F, double hbar) {
  bool ok = true;
  const double y = log_y_factor(F.width, hbar, ok);
  if (!ok) return not_integrable();
  return from_log(F.dim() * (0.5 * std::log(std::numbers::pi * F.width) + y), std::norm(F.prefactor));
}

NormEstimate norm_sq_Ps_mc(const HolomorphicFunction& f, const MeasureParams& params, std::size_t samples,
                           std::uint64_t seed) {
  params.validate();
  const double sd = std::sqrt(params.s);
  const auto est = sample_moments(samples, 1, [&](std::size_t i, double* out) {
    CounterRng rng(seed, i);
    ComplexVector x(static_cast<std::size_t>(params.dim));
    for (auto& v : x) v = sd * rng.normal();
    out[0] = std::norm(f(x));
  });
  return {est.mean[0], est.std_error[0], true};
}

NormEstimate norm_sq_Msh_mc(const HolomorphicFunction& F, const MeasureParams& params, std::size_t samples,
                            std::uint64_t seed) {
  params.validate();
  const double sx = std::sqrt(params.r() / 2.0), sy = std::sqrt(params.hbar / 2.0);
  const auto est = sample_moments(samples, 1, [&](std::size_t i, double* out) {
    CounterRng rng(seed, i);
    ComplexVector z(static_cast<std::size_t>(params.dim));
    for (auto& v : z) {
      const double x = sx * rng.normal();
      v = cplx(x, sy * rng.normal());
    }
    out[0] = std::norm(F(z));
  });
  return {est.mean[0], est.std_error[0], true};
}

cplx bargmann_from_c1(const HolomorphicFunction& c1f, const ComplexVector& w) {
  const double d = static_cast<double>(w.size());
  ComplexVector z(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) z[k] = std::numbers::sqrt2 * w[k];
  return std::pow(4.0 * std::numbers::pi, d / 4.0) * std::exp(bilinear_sq(w) / 2.0) * c1f(z);
}

cplx c1_from_bargmann(const HolomorphicFunction& af, const ComplexVector& z) {
  const double d = static_cast<double>(z.size());
  ComplexVector w(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) w[k] = z[k] / std::numbers::sqrt2;
  return std::pow(4.0 * std::numbers::pi, -d / 4.0) * std::exp(-bilinear_sq(z) / 4.0) * af(w);
}

VerificationReport mc_isometry_check(const std::string& name, const HolomorphicFunction& f,
                                     const MeasureParams& params, std::size_t samples, std::uint64_t seed,
                                     double z_threshold, int gh_order) {
  params.validate();
  VerificationReport report;
  report.experiment = name;
  report.seed = seed;
  const NormEstimate lhs = norm_sq_Ps_mc(f, params, samples, seed);
  const HolomorphicFunction transformed = [&](const ComplexVector& z) {
    return c_transform_quadrature(f, params.hbar, z, gh_order);
  };
  const NormEstimate rhs = norm_sq_Msh_mc(transformed, params, samples, seed + 1);
  report.add_info(name + ".norm_sq_Ps", lhs.value, 0.0, lhs.std_error);
  report.add_info(name + ".norm_sq_Msh", rhs.value, 0.0, rhs.std_error);
  report.add_check(name + ".isometry", lhs.value, rhs.value, std::hypot(lhs.std_error, rhs.std_error),
                   z_score(lhs.value, lhs.std_error, rhs.value, rhs.std_error), z_threshold);
  return report;
}

}  // namespace ymcyl
