#pragma once

// SU(2), SL(2,C) and their Lie algebras.
//
// The Lie algebra su(2) carries the Ad-invariant inner product
//   <X, Y> = -2 tr(XY),
// for which e_a = -(i/2) sigma_a (a = 1, 2, 3) is orthonormal. All algebra
// vectors are stored as coordinates in this basis.

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ymcyl {

using cplx = std::complex<double>;

/// Scale s in <X,Y> = -s tr(XY). Fixed at 2 throughout the library.
inline constexpr double kInnerProductScale = 2.0;

class CutLocusError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> a{};

  cplx& operator()(int i, int j) { return a[2 * i + j]; }
  const cplx& operator()(int i, int j) const { return a[2 * i + j]; }

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 zero() { return Mat2{}; }

  cplx trace() const { return a[0] + a[3]; }
  cplx det() const { return a[0] * a[3] - a[1] * a[2]; }
  Mat2 adjoint() const { return Mat2{{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}}; }
  /// Inverse of a determinant-one matrix.
  Mat2 inverse_unimodular() const { return Mat2{{a[3], -a[1], -a[2], a[0]}}; }
  Mat2 inverse() const;
  double frobenius() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2{{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
                 x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return Mat2{{x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2], x.a[3] + y.a[3]}};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return Mat2{{x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]}};
  }
  friend Mat2 operator*(cplx s, const Mat2& x) { return Mat2{{s * x.a[0], s * x.a[1], s * x.a[2], s * x.a[3]}}; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Frobenius distance between two matrices.
double distance(const Mat2& x, const Mat2& y);

/// Element of su(2) in the orthonormal basis {e_1, e_2, e_3}.
struct AlgebraVector {
  std::array<double, 3> c{};

  static AlgebraVector basis(int a) {
    AlgebraVector v;
    v.c[static_cast<std::size_t>(a)] = 1.0;
    return v;
  }
  /// Recovers coordinates from a traceless skew-Hermitian matrix.
  static AlgebraVector from_matrix(const Mat2& m);

  Mat2 matrix() const;
  double norm_sq() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2]; }
  double norm() const;

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }

  friend AlgebraVector operator+(const AlgebraVector& x, const AlgebraVector& y) {
    return {{x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2]}};
  }
  friend AlgebraVector operator-(const AlgebraVector& x, const AlgebraVector& y) {
    return {{x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2]}};
  }
  friend AlgebraVector operator*(double s, const AlgebraVector& x) { return {{s * x.c[0], s * x.c[1], s * x.c[2]}}; }
  friend bool operator==(const AlgebraVector&, const AlgebraVector&) = default;
};

/// <X, Y> = -2 tr(XY); equals the Euclidean dot product of coordinates.
double inner(const AlgebraVector& x, const AlgebraVector& y);

/// Element of sl(2,C) = su(2) + i su(2), complex coordinates in the same basis.
struct ComplexAlgebraVector {
  std::array<cplx, 3> c{};

  ComplexAlgebraVector() = default;
  explicit ComplexAlgebraVector(std::array<cplx, 3> coords) : c(coords) {}
  ComplexAlgebraVector(const AlgebraVector& re, const AlgebraVector& im);
  /// Recovers coordinates from any traceless matrix.
  static ComplexAlgebraVector from_matrix(const Mat2& m);

  Mat2 matrix() const;
  AlgebraVector real() const { return {{c[0].real(), c[1].real(), c[2].real()}}; }
  AlgebraVector imag() const { return {{c[0].imag(), c[1].imag(), c[2].imag()}}; }

  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  friend ComplexAlgebraVector operator+(const ComplexAlgebraVector& x, const ComplexAlgebraVector& y) {
    return ComplexAlgebraVector({x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2]});
  }
  friend ComplexAlgebraVector operator*(cplx s, const ComplexAlgebraVector& x) {
    return ComplexAlgebraVector({s * x.c[0], s * x.c[1], s * x.c[2]});
  }
  friend bool operator==(const ComplexAlgebraVector&, const ComplexAlgebraVector&) = default;
};

/// Element of SU(2).
class GroupElement {
 public:
  GroupElement() : m_(Mat2::identity()) {}
  /// Wraps a matrix assumed unitary with unit determinant. Not checked.
  explicit GroupElement(const Mat2& m) : m_(m) {}
  /// Unit quaternion (q0, q1, q2, q3) -> q0 I + 2 sum_a q_a e_a.
  static GroupElement from_quaternion(double q0, double q1, double q2, double q3);
  static GroupElement identity() { return GroupElement(); }

  const Mat2& matrix() const { return m_; }
  GroupElement inverse() const { return GroupElement(m_.adjoint()); }
  /// max(|x^* x - I|, |det x - 1|)
  double unitarity_defect() const;

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) { return GroupElement(x.m_ * y.m_); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Mat2 m_;
};

/// Element of SL(2,C).
class ComplexGroupElement {
 public:
  ComplexGroupElement() : m_(Mat2::identity()) {}
  explicit ComplexGroupElement(const Mat2& m) : m_(m) {}
  ComplexGroupElement(const GroupElement& x) : m_(x.matrix()) {}  // NOLINT: K is a subgroup of K_C
  static ComplexGroupElement identity() { return ComplexGroupElement(); }

  const Mat2& matrix() const { return m_; }
  ComplexGroupElement inverse() const { return ComplexGroupElement(m_.inverse_unimodular()); }
  /// |Y| in the polar form g = x e^{iY}; cheap (no full decomposition).
  double imaginary_norm() const;

  friend ComplexGroupElement operator*(const ComplexGroupElement& x, const ComplexGroupElement& y) {
    return ComplexGroupElement(x.m_ * y.m_);
  }
  friend bool operator==(const ComplexGroupElement&, const ComplexGroupElement&) = default;

 private:
  Mat2 m_;
};

GroupElement exp_group(const AlgebraVector& x);
ComplexGroupElement exp_complex(const ComplexAlgebraVector& z);

/// Principal logarithm, |result| < 2 pi. Throws CutLocusError near -I.
AlgebraVector log_group(const GroupElement& x, double cut_tolerance = 1e-9);
/// Principal logarithm on SL(2,C); throws CutLocusError where it is singular.
ComplexAlgebraVector log_complex(const ComplexGroupElement& g, double cut_tolerance = 1e-9);

/// Ad_x X = x X x^{-1}.
AlgebraVector adjoint_action(const GroupElement& x, const AlgebraVector& v);
ComplexAlgebraVector adjoint_action(const ComplexGroupElement& g, const ComplexAlgebraVector& v);

/// (x, Y) -> x e^{iY}, the diffeomorphism K x k -> K_C.
ComplexGroupElement polar_compose(const GroupElement& x, const AlgebraVector& y);

struct PolarParts {
  GroupElement unitary;
  AlgebraVector log_positive;  // Y with e^{iY} the positive factor
};
/// Inverse of polar_compose: g = x p, p = e^{iY} positive definite.
PolarParts polar_decompose(const ComplexGroupElement& g);

// -- Haar measure ------------------------------------------------------------

struct QuadratureNode {
  GroupElement x;
  double weight;
};

/// Product rule over Euler-angle coordinates
///   x = exp(alpha e3) exp(beta e2) exp(gamma e3),
/// Gauss-Legendre in cos(beta) and trapezoidal in the two angle
/// combinations -(alpha+gamma)/2 and (alpha-gamma)/2. Exact for every
/// product of matrix coefficients of total degree d provided
/// polar >= d/4 + 1 and both azimuthal counts exceed d.
struct HaarRule {
  int polar = 8;
  int azimuth1 = 16;
  int azimuth2 = 16;

  /// Smallest rule exact on matrix-coefficient products of total degree `degree`.
  static HaarRule for_degree(int degree);
  /// Rule for class-function integrands of x y^{-1} with x diagonal: the
  /// integrand does not depend on the second azimuth.
  static HaarRule for_degree_diagonal_class(int degree);
  std::size_t size() const {
    return static_cast<std::size_t>(polar) * static_cast<std::size_t>(azimuth1) * static_cast<std::size_t>(azimuth2);
  }
};

std::vector<QuadratureNode> haar_quadrature(const HaarRule& rule);

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);
/// Gauss-Hermite nodes and weights for weight e^{-x^2} (weights sum to sqrt(pi)).
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n);

class CounterRng;
/// Haar-distributed element: normalized Gaussian quaternion.
GroupElement haar_sample(CounterRng& rng);

}  // namespace ymcyl
