#include "ymcyl/harmonic.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace ymcyl {

namespace {

// Entry (l, k) of d pi_n(X) in the orthonormal monomial basis. With
// m_k = z1^{n-1-k} z2^k,
//   dpi(X) m_k = [(n-1-k) X00 + k X11] m_k + (n-1-k) X10 m_{k+1} + k X01 m_{k-1}.
cplx generator_entry(int n, const Mat2& x, int l, int k) {
  if (l == k) return static_cast<double>(n - 1 - k) * x(0, 0) + static_cast<double>(k) * x(1, 1);
  if (l == k + 1) return std::sqrt(static_cast<double>((n - 1 - k) * (k + 1))) * x(1, 0);
  if (l == k - 1) return std::sqrt(static_cast<double>(k * (n - k))) * x(0, 1);
  return 0.0;
}

void check_dimension(int n) {
  if (n < 1) throw std::invalid_argument("irrep dimension must be >= 1, got " + std::to_string(n));
}

}  // namespace

Eigen::MatrixXcd irrep_generator(int n, const ComplexAlgebraVector& x) {
  check_dimension(n);
  const Mat2 m = x.matrix();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = std::max(0, k - 1); l <= std::min(n - 1, k + 1); ++l) d(l, k) = generator_entry(n, m, l, k);
  }
  return d;
}

Eigen::MatrixXcd irrep_matrix(int n, const ComplexGroupElement& g) {
  check_dimension(n);
  const Mat2& m = g.matrix();
  const int deg = n - 1;
  std::vector<double> lfact(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) lfact[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0);
  auto binom = [&](int p, int i) {
    return std::round(std::exp(lfact[static_cast<std::size_t>(p)] - lfact[static_cast<std::size_t>(i)] -
                               lfact[static_cast<std::size_t>(p - i)]));
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  std::vector<cplx> first, second;
  for (int k = 0; k <= deg; ++k) {
    // (z1 g00 + z2 g10)^{deg-k} (z1 g01 + z2 g11)^k, coefficient of z1^{deg-l} z2^l.
    const int p = deg - k;
    first.assign(static_cast<std::size_t>(p) + 1, 0.0);
    second.assign(static_cast<std::size_t>(k) + 1, 0.0);
    for (int i = 0; i <= p; ++i) first[static_cast<std::size_t>(i)] = binom(p, i) * std::pow(m(0, 0), p - i) * std::pow(m(1, 0), i);
    for (int j = 0; j <= k; ++j) second[static_cast<std::size_t>(j)] = binom(k, j) * std::pow(m(0, 1), k - j) * std::pow(m(1, 1), j);
    for (int i = 0; i <= p; ++i) {
      for (int j = 0; j <= k; ++j) out(i + j, k) += first[static_cast<std::size_t>(i)] * second[static_cast<std::size_t>(j)];
    }
    for (int l = 0; l <= deg; ++l) {
      const double ratio = std::exp(0.5 * (lfact[static_cast<std::size_t>(l)] + lfact[static_cast<std::size_t>(deg - l)] -
                                           lfact[static_cast<std::size_t>(k)] - lfact[static_cast<std::size_t>(deg - k)]));
      out(l, k) *= ratio;
    }
  }
  return out;
}

std::vector<cplx> characters(int max_n, const ComplexGroupElement& g) {
  check_dimension(max_n);
  std::vector<cplx> chi(static_cast<std::size_t>(max_n));
  const cplx tr = g.matrix().trace();
  chi[0] = 1.0;
  if (max_n > 1) chi[1] = tr;
  for (std::size_t n = 2; n < chi.size(); ++n) chi[n] = tr * chi[n - 1] - chi[n - 2];
  return chi;
}

cplx character(int n, const ComplexGroupElement& g) { return characters(n, g).back(); }

double casimir(int n) {
  check_dimension(n);
  static std::mutex mu;
  static std::vector<double> cache;
  std::lock_guard lock(mu);
  while (static_cast<int>(cache.size()) < n) {
    const int m = static_cast<int>(cache.size()) + 1;
    // -sum_a [dpi(e_a)^2]_{00}; row 0 of a tridiagonal generator has two entries.
    cplx sum = 0.0;
    for (int a = 0; a < 3; ++a) {
      const Mat2 e = AlgebraVector::basis(a).matrix();
      for (int l = 0; l <= std::min(1, m - 1); ++l) sum += generator_entry(m, e, 0, l) * generator_entry(m, e, l, 0);
    }
    cache.push_back(-sum.real());
  }
  return cache[static_cast<std::size_t>(n - 1)];
}

// ---------------------------------------------------------------------------

double heat_tail_bound(double t, int cutoff, double imag_norm) {
  // T_n = n^2 exp(-t c(n)/2 + (n-1)|Y|/2). The ratio T_{n+1}/T_n decreases
  // in n, so once it drops below one the rest is bounded geometrically.
  auto log_term = [&](int n) {
    return 2.0 * std::log(static_cast<double>(n)) - t * casimir(n) / 2.0 + (n - 1) * imag_norm / 2.0;
  };
  double sum = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double lt = log_term(n);
    const double ratio = std::exp(log_term(n + 1) - lt);
    if (ratio < 1.0) return sum + std::exp(lt) / (1.0 - ratio);
    sum += std::exp(lt);
    if (!std::isfinite(sum)) return sum;
  }
}

HeatKernelSeries::HeatKernelSeries(double t, int cutoff) : t_(t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel time must be positive");
  check_dimension(cutoff);
  coeff_.resize(static_cast<std::size_t>(cutoff));
  for (int n = 1; n <= cutoff; ++n) coeff_[static_cast<std::size_t>(n - 1)] = n * std::exp(-t * casimir(n) / 2.0);
}

HeatKernelSeries HeatKernelSeries::for_tolerance(double t, double imag_norm, double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel time must be positive");
  constexpr int kMaxCutoff = 4000;
  for (int cutoff = 1; cutoff <= kMaxCutoff; ++cutoff) {
    if (heat_tail_bound(t, cutoff, imag_norm) <= tol) return HeatKernelSeries(t, cutoff);
  }
  const double bound = heat_tail_bound(t, kMaxCutoff, imag_norm);
  throw TruncationError("heat kernel: no cutoff <= " + std::to_string(kMaxCutoff) + " reaches tolerance", bound);
}

double HeatKernelSeries::tail_bound(double imag_norm) const { return heat_tail_bound(t_, cutoff(), imag_norm); }

cplx HeatKernelSeries::operator()(const ComplexGroupElement& g) const {
  const cplx tr = g.matrix().trace();
  cplx prev = 0.0, cur = 1.0, sum = 0.0;
  for (double c : coeff_) {
    sum += c * cur;
    const cplx next = tr * cur - prev;
    prev = cur;
    cur = next;
  }
  return sum;
}

double HeatKernelSeries::operator()(const GroupElement& x) const {
  const double tr = x.matrix().trace().real();
  double prev = 0.0, cur = 1.0, sum = 0.0;
  for (double c : coeff_) {
    sum += c * cur;
    const double next = tr * cur - prev;
    prev = cur;
    cur = next;
  }
  return sum;
}

cplx HeatKernelSeries::evaluate_checked(const ComplexGroupElement& g, double tol) const {
  const double bound = tail_bound(g.imaginary_norm());
  if (bound > tol) {
    throw TruncationError("heat kernel: tail bound " + std::to_string(bound) + " exceeds tolerance at cutoff " +
                              std::to_string(cutoff()),
                          bound);
  }
  return (*this)(g);
}

cplx heat_kernel(double t, const ComplexGroupElement& g, double tol) {
  return HeatKernelSeries::for_tolerance(t, g.imaginary_norm(), tol)(g);
}

cplx heat_kernel(double t, const ComplexGroupElement& g, int cutoff, double tol) {
  return HeatKernelSeries(t, cutoff).evaluate_checked(g, tol);
}

double half_angle(const GroupElement& x) {
  const Mat2& m = x.matrix();
  const AlgebraVector w = AlgebraVector::from_matrix(cplx(0.5) * (m - m.adjoint()));
  return std::atan2(w.norm() / 2.0, m.trace().real() / 2.0);
}

double heat_kernel(double t, const GroupElement& x) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel time must be positive");
  if (t >= 1.0) return HeatKernelSeries::for_tolerance(t, 0.0, 1e-15)(x);
  const double two_pi = 2.0 * std::numbers::pi;
  const double theta = half_angle(x);
  const int images = static_cast<int>(std::ceil(std::sqrt(40.0 * t) / two_pi)) + 1;
  const double prefactor = std::exp(t / 8.0) * (2.0 / t) * std::sqrt(8.0 * std::numbers::pi / t);
  // S(theta) = sum_k u_k e^{-2 u_k^2/t} vanishes at theta = 0 and pi; there the
  // quotient S/sin(theta) is replaced by its limit +-S'(theta).
  double s = 0.0, ds = 0.0;
  for (int k = -images; k <= images; ++k) {
    const double u = theta + two_pi * k;
    const double e = std::exp(-2.0 * u * u / t);
    s += u * e;
    ds += (1.0 - 4.0 * u * u / t) * e;
  }
  const double sin_theta = std::sin(theta);
  if (sin_theta < 1e-7) return prefactor * (theta < 1.0 ? ds : -ds);
  return prefactor * s / sin_theta;
}

// ---------------------------------------------------------------------------

BandLimitedFunction::BandLimitedFunction(int cutoff) {
  check_dimension(cutoff);
  blocks_.reserve(static_cast<std::size_t>(cutoff));
  for (int n = 1; n <= cutoff; ++n) blocks_.push_back(Eigen::MatrixXcd::Zero(n, n));
}

BandLimitedFunction BandLimitedFunction::constant(cplx value) {
  BandLimitedFunction f(1);
  f.block(1)(0, 0) = value;
  return f;
}

BandLimitedFunction BandLimitedFunction::character(int n) {
  BandLimitedFunction f(n);
  f.block(n) = Eigen::MatrixXcd::Identity(n, n) / std::sqrt(static_cast<double>(n));
  return f;
}

BandLimitedFunction BandLimitedFunction::matrix_coefficient(int n, int i, int j) {
  BandLimitedFunction f(n);
  f.block(n)(i, j) = 1.0 / std::sqrt(static_cast<double>(n));
  return f;
}

void BandLimitedFunction::set_coefficient(int n, int i, int j, cplx v) {
  check_dimension(n);
  while (cutoff() < n) blocks_.push_back(Eigen::MatrixXcd::Zero(cutoff() + 1, cutoff() + 1));
  block(n)(i, j) = v;
}

cplx BandLimitedFunction::operator()(const ComplexGroupElement& g) const {
  cplx sum = 0.0;
  std::vector<cplx> chi;
  for (int n = 1; n <= cutoff(); ++n) {
    const Eigen::MatrixXcd& c = block(n);
    if (c.isZero(0.0)) continue;
    const double w = std::sqrt(static_cast<double>(n));
    const cplx d = c(0, 0);
    if (c.isApprox(d * Eigen::MatrixXcd::Identity(n, n), 0.0)) {
      // Multiple of the character.
      if (chi.empty()) chi = characters(cutoff(), g);
      sum += w * d * chi[static_cast<std::size_t>(n - 1)];
      continue;
    }
    sum += w * c.cwiseProduct(irrep_matrix(n, g)).sum();
  }
  return sum;
}

double BandLimitedFunction::coefficient_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

double BandLimitedFunction::sup_bound() const {
  double s = 0.0;
  for (int n = 1; n <= cutoff(); ++n) s += std::sqrt(static_cast<double>(n)) * block(n).cwiseAbs().sum();
  return s;
}

BandLimitedFunction operator+(const BandLimitedFunction& a, const BandLimitedFunction& b) {
  BandLimitedFunction out(std::max(a.cutoff(), b.cutoff()));
  for (int n = 1; n <= a.cutoff(); ++n) out.block(n) += a.block(n);
  for (int n = 1; n <= b.cutoff(); ++n) out.block(n) += b.block(n);
  return out;
}

BandLimitedFunction operator*(cplx s, const BandLimitedFunction& a) {
  BandLimitedFunction out = a;
  for (auto& b : out.blocks_) b *= s;
  return out;
}

cplx evaluate(const BandLimitedFunction& f, const ComplexGroupElement& g) { return f(g); }

BandLimitedFunction heat_semigroup(const BandLimitedFunction& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_semigroup: t must be >= 0");
  BandLimitedFunction out = f;
  for (int n = 1; n <= f.cutoff(); ++n) out.block(n) *= std::exp(-t * casimir(n) / 2.0);
  return out;
}

cplx coefficient_inner_product(const BandLimitedFunction& f, const BandLimitedFunction& g) {
  cplx s = 0.0;
  for (int n = 1; n <= std::min(f.cutoff(), g.cutoff()); ++n) s += f.block(n).cwiseProduct(g.block(n).conjugate()).sum();
  return s;
}

QuadratureValue inner_product_rho_s(const BandLimitedFunction& f, const BandLimitedFunction& g, double s, double tol) {
  if (!(s > 0.0)) throw std::invalid_argument("inner_product_rho_s: s must be positive");
  const bool haar = std::isinf(s);
  const double sup = std::max(f.sup_bound() * g.sup_bound(), 1e-300);
  const HeatKernelSeries rho = haar ? HeatKernelSeries(1.0, 1) : HeatKernelSeries::for_tolerance(s, 0.0, tol / sup);
  const int rho_degree = haar ? 0 : rho.cutoff() - 1;
  const auto rule = haar_quadrature(HaarRule::for_degree((f.cutoff() - 1) + (g.cutoff() - 1) + rho_degree));
  cplx sum = 0.0;
  for (const auto& q : rule) {
    const double weight = haar ? 1.0 : rho(q.x);
    sum += q.weight * weight * f(q.x) * std::conj(g(q.x));
  }
  return {sum, haar ? 0.0 : rho.tail_bound(0.0) * sup};
}

cplx convolve_heat_kernel(const HeatKernelSeries& rho, const std::function<cplx(const GroupElement&)>& f,
                          const ComplexGroupElement& g, const std::vector<QuadratureNode>& rule) {
  cplx sum = 0.0;
  for (const auto& q : rule) sum += q.weight * rho(g * ComplexGroupElement(q.x.inverse())) * f(q.x);
  return sum;
}

double heat_convolution(double t, double s, const GroupElement& x, double tol) {
  const auto rho_t = HeatKernelSeries::for_tolerance(t, 0.0, tol);
  const auto rho_s = HeatKernelSeries::for_tolerance(s, 0.0, tol);
  const GroupElement d = diagonal_representative(x);
  const auto rule = haar_quadrature(HaarRule::for_degree_diagonal_class((rho_t.cutoff() - 1) + (rho_s.cutoff() - 1)));
  double sum = 0.0;
  for (const auto& q : rule) sum += q.weight * rho_t(d * q.x.inverse()) * rho_s(q.x);
  return sum;
}

GroupElement diagonal_representative(const GroupElement& x) {
  const double theta = half_angle(x);
  return GroupElement(Mat2{{std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta)}});
}

}  // namespace ymcyl
