#pragma once

// Peter-Weyl analysis on SU(2) and its holomorphic extension to SL(2,C).
//
// Irreps are labelled by their dimension n = 2j + 1 and realized on
// homogeneous polynomials of degree n - 1 in (z1, z2) with
//   (pi_n(g) p)(z) = p(z g),   z a row vector,
// in the orthonormal monomial basis z1^{n-1-k} z2^k / sqrt(k! (n-1-k)!).
// The formula is polynomial in the entries of g, so the same code gives the
// holomorphic continuation to SL(2,C).

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ymcyl/lie_group.hpp"

namespace ymcyl {

class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double bound) : std::runtime_error(what), bound_(bound) {}
  /// The certified tail bound that exceeded the tolerance.
  double bound() const { return bound_; }

 private:
  double bound_;
};

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

Eigen::MatrixXcd irrep_matrix(int n, const ComplexGroupElement& g);
/// Derivative d/dt pi_n(exp(tX)) at t = 0.
Eigen::MatrixXcd irrep_generator(int n, const ComplexAlgebraVector& x);

/// chi_n(g) = tr pi_n(g), via chi_{n+1} = tr(g) chi_n - chi_{n-1}.
cplx character(int n, const ComplexGroupElement& g);
/// chi_1(g), ..., chi_{max_n}(g).
std::vector<cplx> characters(int max_n, const ComplexGroupElement& g);

/// Eigenvalue of -Delta_K on the irrep of dimension n. Computed from the
/// generators on first use and cached.
double casimir(int n);

/// rho_t(g) = sum_{n <= cutoff} n e^{-t c(n)/2} chi_n(g).
class HeatKernelSeries {
 public:
  HeatKernelSeries(double t, int cutoff);
  /// Smallest cutoff whose tail bound at |Im| <= imag_norm is below tol.
  static HeatKernelSeries for_tolerance(double t, double imag_norm, double tol);

  double time() const { return t_; }
  int cutoff() const { return static_cast<int>(coeff_.size()); }
  double coefficient(int n) const { return coeff_.at(static_cast<std::size_t>(n - 1)); }

  /// Bound on |sum_{n > cutoff} n e^{-t c(n)/2} chi_n(g)| over all g with
  /// imaginary polar part of norm <= imag_norm, using
  /// |chi_n(x e^{iY})| <= n e^{(n-1)|Y|/2}.
  double tail_bound(double imag_norm) const;

  cplx operator()(const ComplexGroupElement& g) const;
  double operator()(const GroupElement& x) const;
  /// Throws TruncationError when tail_bound(|Im g|) > tol.
  cplx evaluate_checked(const ComplexGroupElement& g, double tol) const;

 private:
  double t_;
  std::vector<double> coeff_;
};

double heat_tail_bound(double t, int cutoff, double imag_norm);

/// rho_t(g) with the cutoff chosen from tol.
cplx heat_kernel(double t, const ComplexGroupElement& g, double tol = 1e-13);
/// rho_t(g) at a fixed cutoff; throws TruncationError if the tail bound exceeds tol.
cplx heat_kernel(double t, const ComplexGroupElement& g, int cutoff, double tol);

/// rho_t on K with full relative accuracy. For t < 1 this sums the images of
/// the Euclidean kernel over the geodesics through x (the Poisson dual of the
/// character series),
///   rho_t = e^{t/8} (2/t) sqrt(8 pi/t) / sin(theta) sum_k (theta + 2 pi k) e^{-2 (theta + 2 pi k)^2 / t},
/// where e^{+-i theta} are the eigenvalues of x. The character series loses
/// all relative accuracy near -I at small t, where rho_t is exponentially small.
double heat_kernel(double t, const GroupElement& x);

/// Half rotation angle theta in [0, pi] (eigenvalues e^{+-i theta}).
double half_angle(const GroupElement& x);

/// Function on K with finitely many Peter-Weyl coefficients: the coefficient
/// (n, i, j) multiplies sqrt(n) pi_n(x)_{ij}, an orthonormal family for Haar
/// measure. Evaluation at g in SL(2,C) is the holomorphic continuation.
class BandLimitedFunction {
 public:
  explicit BandLimitedFunction(int cutoff = 1);

  static BandLimitedFunction constant(cplx value);
  static BandLimitedFunction character(int n);
  static BandLimitedFunction matrix_coefficient(int n, int i, int j);

  int cutoff() const { return static_cast<int>(blocks_.size()); }
  const Eigen::MatrixXcd& block(int n) const { return blocks_.at(static_cast<std::size_t>(n - 1)); }
  Eigen::MatrixXcd& block(int n) { return blocks_.at(static_cast<std::size_t>(n - 1)); }
  cplx coefficient(int n, int i, int j) const { return block(n)(i, j); }
  void set_coefficient(int n, int i, int j, cplx v);

  cplx operator()(const ComplexGroupElement& g) const;
  /// sqrt of the sum of |coefficient|^2 (the L^2(K, Haar) norm).
  double coefficient_norm() const;
  /// sup_K |f| <= sum_n sqrt(n) sum_ij |c_nij|.
  double sup_bound() const;

  friend BandLimitedFunction operator+(const BandLimitedFunction& a, const BandLimitedFunction& b);
  friend BandLimitedFunction operator*(cplx s, const BandLimitedFunction& a);

 private:
  std::vector<Eigen::MatrixXcd> blocks_;
};

cplx evaluate(const BandLimitedFunction& f, const ComplexGroupElement& g);

/// e^{t Delta_K / 2}: scales block n by e^{-t c(n)/2}.
BandLimitedFunction heat_semigroup(const BandLimitedFunction& f, double t);

/// Haar inner product from coefficients: sum c_f conj(c_g).
cplx coefficient_inner_product(const BandLimitedFunction& f, const BandLimitedFunction& g);

struct QuadratureValue {
  cplx value;
  double error_bound;
};

/// int_K f conj(g) rho_s dx by a rule exact on the truncated integrand; the
/// error bound covers the heat-kernel truncation. s = kInfiniteTime gives the
/// Haar inner product.
QuadratureValue inner_product_rho_s(const BandLimitedFunction& f, const BandLimitedFunction& g, double s,
                                    double tol = 1e-13);

/// int_K rho(g x^{-1}) f(x) dx on the given rule.
cplx convolve_heat_kernel(const HeatKernelSeries& rho, const std::function<cplx(const GroupElement&)>& f,
                          const ComplexGroupElement& g, const std::vector<QuadratureNode>& rule);

/// (rho_t * rho_s)(x) = int rho_t(x y^{-1}) rho_s(y) dy. Both kernels are class
/// functions, so x is replaced by a diagonal representative and the rule needs
/// a single azimuth; it is exact for the kernels truncated at tol.
double heat_convolution(double t, double s, const GroupElement& x, double tol = 1e-14);

/// A diagonal element conjugate to x in SU(2).
GroupElement diagonal_representative(const GroupElement& x);

}  // namespace ymcyl
