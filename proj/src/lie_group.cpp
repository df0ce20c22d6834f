#include "ymcyl/lie_group.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ymcyl/rng.hpp"

namespace ymcyl {

namespace {

constexpr cplx kI{0.0, 1.0};

// cos(t) and sin(t)/t as functions of t^2; both are entire in t^2.
void cos_sinc_of_square(cplx t2, cplx& cos_t, cplx& sinc_t) {
  if (std::abs(t2) < 1e-8) {
    cos_t = 1.0 - t2 / 2.0 + t2 * t2 / 24.0;
    sinc_t = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    return;
  }
  const cplx t = std::sqrt(t2);
  cos_t = std::cos(t);
  sinc_t = std::sin(t) / t;
}

// Coordinates of a traceless Hermitian matrix in the Pauli basis.
std::array<double, 3> pauli_coords(const Mat2& h) {
  return {(h(0, 1) + h(1, 0)).real() / 2.0, (kI * (h(0, 1) - h(1, 0))).real() / 2.0,
          (h(0, 0) - h(1, 1)).real() / 2.0};
}

}  // namespace

Mat2 Mat2::inverse() const {
  const cplx d = det();
  return Mat2{{a[3] / d, -a[1] / d, -a[2] / d, a[0] / d}};
}

double Mat2::frobenius() const { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3])); }

double distance(const Mat2& x, const Mat2& y) { return (x - y).frobenius(); }

// X = sum c_a e_a with e_a = -(i/2) sigma_a:
//   X = [[-i c3, -i c1 - c2], [-i c1 + c2, i c3]] / 2
Mat2 AlgebraVector::matrix() const {
  return Mat2{{cplx(0.0, -c[2] / 2.0), cplx(-c[1] / 2.0, -c[0] / 2.0), cplx(c[1] / 2.0, -c[0] / 2.0),
               cplx(0.0, c[2] / 2.0)}};
}

AlgebraVector AlgebraVector::from_matrix(const Mat2& m) {
  const ComplexAlgebraVector z = ComplexAlgebraVector::from_matrix(m);
  return z.real();
}

double AlgebraVector::norm() const { return std::sqrt(norm_sq()); }

double inner(const AlgebraVector& x, const AlgebraVector& y) {
  return x.c[0] * y.c[0] + x.c[1] * y.c[1] + x.c[2] * y.c[2];
}

ComplexAlgebraVector::ComplexAlgebraVector(const AlgebraVector& re, const AlgebraVector& im)
    : c{cplx(re.c[0], im.c[0]), cplx(re.c[1], im.c[1]), cplx(re.c[2], im.c[2])} {}

Mat2 ComplexAlgebraVector::matrix() const {
  const cplx h = 0.5;
  return Mat2{{-kI * h * c[2], h * (-kI * c[0] - c[1]), h * (-kI * c[0] + c[1]), kI * h * c[2]}};
}

ComplexAlgebraVector ComplexAlgebraVector::from_matrix(const Mat2& m) {
  // Uses the traceless part only.
  const cplx d = (m(0, 0) - m(1, 1)) / 2.0;
  return ComplexAlgebraVector({kI * (m(0, 1) + m(1, 0)), m(1, 0) - m(0, 1), 2.0 * kI * d});
}

GroupElement GroupElement::from_quaternion(double q0, double q1, double q2, double q3) {
  // q0 I - i (q1 s1 + q2 s2 + q3 s3)
  return GroupElement(Mat2{{cplx(q0, -q3), cplx(-q2, -q1), cplx(q2, -q1), cplx(q0, q3)}});
}

double GroupElement::unitarity_defect() const {
  const double u = distance(m_.adjoint() * m_, Mat2::identity());
  return std::max(u, std::abs(m_.det() - 1.0));
}

double ComplexGroupElement::imaginary_norm() const {
  const auto u = pauli_coords(m_.adjoint() * m_);
  return std::asinh(std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]));
}

GroupElement exp_group(const AlgebraVector& x) {
  // X^2 = -(|c|^2/4) I, so e^X = cos(t) I + sin(t)/t X with t = |c|/2.
  const double t = x.norm() / 2.0;
  const double cos_t = std::cos(t);
  const double sinc_t = t < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
  Mat2 m = cplx(sinc_t) * x.matrix();
  m(0, 0) += cos_t;
  m(1, 1) += cos_t;
  return GroupElement(m);
}

ComplexGroupElement exp_complex(const ComplexAlgebraVector& z) {
  const Mat2 x = z.matrix();
  cplx cos_t, sinc_t;
  cos_sinc_of_square(x.det(), cos_t, sinc_t);
  Mat2 m = sinc_t * x;
  m(0, 0) += cos_t;
  m(1, 1) += cos_t;
  return ComplexGroupElement(m);
}

AlgebraVector log_group(const GroupElement& x, double cut_tolerance) {
  const Mat2& m = x.matrix();
  if (distance(m, cplx(-1.0) * Mat2::identity()) < cut_tolerance) {
    throw CutLocusError("log_group: argument within tolerance of -I");
  }
  // x = cos(t) I + 2 sin(t) sum n_a e_a; the skew part has coordinates 2 sin(t) n.
  const AlgebraVector w = AlgebraVector::from_matrix(cplx(0.5) * (m - m.adjoint()));
  const double wn = w.norm();
  const double t = std::atan2(wn / 2.0, m.trace().real() / 2.0);
  if (wn < 1e-300) return AlgebraVector{};
  return (2.0 * t / wn) * w;
}

ComplexAlgebraVector log_complex(const ComplexGroupElement& g, double cut_tolerance) {
  const Mat2& m = g.matrix();
  const cplx cos_mu = m.trace() / 2.0;
  Mat2 traceless = m;
  traceless(0, 0) -= cos_mu;
  traceless(1, 1) -= cos_mu;
  // traceless = (sin mu / mu) X and det(traceless) = sin^2 mu.
  const cplx sin_mu = std::sqrt(traceless.det());
  if (std::abs(sin_mu) < cut_tolerance && cos_mu.real() < 0.0) {
    throw CutLocusError("log_complex: argument on the cut locus");
  }
  const cplx mu = -kI * std::log(cos_mu + kI * sin_mu);
  const cplx ratio = std::abs(mu) < 1e-6 ? 1.0 + mu * mu / 6.0 : mu / sin_mu;
  return ComplexAlgebraVector::from_matrix(ratio * traceless);
}

AlgebraVector adjoint_action(const GroupElement& x, const AlgebraVector& v) {
  return AlgebraVector::from_matrix(x.matrix() * v.matrix() * x.matrix().adjoint());
}

ComplexAlgebraVector adjoint_action(const ComplexGroupElement& g, const ComplexAlgebraVector& v) {
  return ComplexAlgebraVector::from_matrix(g.matrix() * v.matrix() * g.matrix().inverse_unimodular());
}

ComplexGroupElement polar_compose(const GroupElement& x, const AlgebraVector& y) {
  return ComplexGroupElement(x) * exp_complex(ComplexAlgebraVector(AlgebraVector{}, y));
}

PolarParts polar_decompose(const ComplexGroupElement& g) {
  // g^* g = p^2 = exp(y . sigma) = cosh|y| I + sinh|y| n . sigma, and iY = (y . sigma)/2.
  const auto u = pauli_coords(g.matrix().adjoint() * g.matrix());
  const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  const double scale = un < 1e-12 ? 1.0 - un * un / 6.0 : std::asinh(un) / un;
  const AlgebraVector y{{scale * u[0], scale * u[1], scale * u[2]}};
  const ComplexGroupElement p_inv = exp_complex(ComplexAlgebraVector(AlgebraVector{}, -1.0 * y));
  return {GroupElement((g * p_inv).matrix()), y};
}

HaarRule HaarRule::for_degree(int degree) {
  degree = std::max(degree, 0);
  return {degree / 4 + 1, degree + 1, degree + 1};
}

HaarRule HaarRule::for_degree_diagonal_class(int degree) {
  degree = std::max(degree, 0);
  return {degree / 4 + 1, degree + 1, 1};
}

std::vector<QuadratureNode> haar_quadrature(const HaarRule& rule) {
  const auto [t, wt] = gauss_legendre(rule.polar);
  std::vector<QuadratureNode> nodes;
  nodes.reserve(rule.size());
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ca = std::sqrt((1.0 + t[i]) / 2.0);
    const double sb = std::sqrt((1.0 - t[i]) / 2.0);
    const double w = wt[i] / 2.0 / rule.azimuth1 / rule.azimuth2;
    for (int j = 0; j < rule.azimuth1; ++j) {
      const cplx a = ca * std::polar(1.0, two_pi * j / rule.azimuth1);
      for (int k = 0; k < rule.azimuth2; ++k) {
        const cplx b = sb * std::polar(1.0, two_pi * k / rule.azimuth2);
        nodes.push_back({GroupElement(Mat2{{a, -std::conj(b), b, std::conj(a)}}), w});
      }
    }
  }
  return nodes;
}

namespace {

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
std::pair<std::vector<double>, std::vector<double>> golub_welsch(int n, double mu0, double (*offdiag)(int)) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = offdiag(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    w[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return {x, w};
}

using RuleCache = std::map<int, std::pair<std::vector<double>, std::vector<double>>>;

std::pair<std::vector<double>, std::vector<double>> cached(RuleCache& cache, std::mutex& mu, int n, double mu0,
                                                            double (*offdiag)(int)) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, golub_welsch(n, mu0, offdiag)).first;
  return it->second;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  static RuleCache cache;
  static std::mutex mu;
  return cached(cache, mu, n, 2.0, [](int k) {
    const double kk = k;
    return kk / std::sqrt(4.0 * kk * kk - 1.0);
  });
}

std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
  static RuleCache cache;
  static std::mutex mu;
  return cached(cache, mu, n, std::sqrt(std::numbers::pi), [](int k) { return std::sqrt(k / 2.0); });
}

GroupElement haar_sample(CounterRng& rng) {
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : q) {
      v = rng.normal();
      n2 += v * v;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  return GroupElement::from_quaternion(q[0] * inv, q[1] * inv, q[2] * inv, q[3] * inv);
}

}  // namespace ymcyl
