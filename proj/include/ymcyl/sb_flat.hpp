#pragma once

// Segal-Bargmann transforms on R^d.
//
// C_hbar f = analytic continuation of e^{hbar Delta/2} f. The transform does
// not depend on s; S_{s,hbar} is the same map between the Gaussian spaces
//   dP_s      = (2 pi s)^{-d/2} e^{-x^2/2s} dx,
//   dM_{s,h}  = (pi r)^{-d/2} e^{-x^2/r} (pi h)^{-d/2} e^{-y^2/h} dx dy,  r = 2s - h,
//   dnu_h     = (pi h)^{-d/2} e^{-y^2/h} dx dy.
// z^2 always means the bilinear sum z_1^2 + ... + z_d^2.

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "ymcyl/lie_group.hpp"
#include "ymcyl/report.hpp"

namespace ymcyl {

using RealVector = std::vector<double>;
using ComplexVector = std::vector<cplx>;
/// An entire function on C^d; its restriction to R^d is the real-space function.
using HolomorphicFunction = std::function<cplx(const ComplexVector&)>;

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MeasureParams {
  int dim = 1;
  double s = 1.0;
  double hbar = 0.5;

  double r() const { return 2.0 * s - hbar; }
  /// Throws InvalidParams unless dim >= 1, hbar > 0 and s > hbar/2.
  void validate() const;
};

/// prefactor * e^{a.x}
struct ExponentialFunction {
  cplx prefactor = 1.0;
  RealVector a;

  int dim() const { return static_cast<int>(a.size()); }
  cplx operator()(const ComplexVector& z) const;
};

/// Sum of coefficient * z^alpha over multi-indices alpha.
struct PolynomialFunction {
  int dim = 1;
  std::map<std::vector<int>, cplx> terms;

  static PolynomialFunction monomial(std::vector<int> alpha, cplx coefficient = 1.0);
  int degree() const;
  cplx operator()(const ComplexVector& z) const;
};

/// prefactor * e^{-(z - m)^2 / (2 w)}, w > 0, m real. Contains the ground state
/// and is the one family that is square integrable for dx and nu_hbar.
struct GaussianFunction {
  cplx prefactor = 1.0;
  RealVector center;
  double width = 1.0;

  int dim() const { return static_cast<int>(center.size()); }
  cplx operator()(const ComplexVector& z) const;
};

/// e^{hbar Delta/2} on each family, in closed form; the result is again in
/// the family and is entire, so evaluating it at complex z is the transform.
ExponentialFunction heat_transform(const ExponentialFunction& f, double hbar);
PolynomialFunction heat_transform(const PolynomialFunction& f, double hbar);
GaussianFunction heat_transform(const GaussianFunction& f, double hbar);

template <class F>
cplx c_transform(const F& f, double hbar, const ComplexVector& z) {
  return heat_transform(f, hbar)(z);
}

template <class F>
cplx s_transform(const F& f, const MeasureParams& params, const ComplexVector& z) {
  params.validate();
  return heat_transform(f, params.hbar)(z);
}

/// C_hbar of a black-box entire function, E f(z + sqrt(hbar) xi) with xi
/// standard normal, by a tensor Gauss-Hermite rule of `order` points per axis.
cplx c_transform_quadrature(const HolomorphicFunction& f, double hbar, const ComplexVector& z, int order = 24);

/// A squared norm: closed form (std_error = 0) or Monte Carlo.
/// integrable = false means the norm is infinite and `value` is meaningless.
struct NormEstimate {
  double value = 0.0;
  double std_error = 0.0;
  bool integrable = true;
};

NormEstimate norm_sq_Ps(const ExponentialFunction& f, const MeasureParams& params);
NormEstimate norm_sq_Ps(const PolynomialFunction& f, const MeasureParams& params);
NormEstimate norm_sq_Ps(const GaussianFunction& f, const MeasureParams& params);

NormEstimate norm_sq_Msh(const ExponentialFunction& F, const MeasureParams& params);
NormEstimate norm_sq_Msh(const PolynomialFunction& F, const MeasureParams& params);
NormEstimate norm_sq_Msh(const GaussianFunction& F, const MeasureParams& params);

/// Lebesgue norm on R^d (the domain of the flat transform C_hbar).
NormEstimate norm_sq_dx(const ExponentialFunction& f);
NormEstimate norm_sq_dx(const PolynomialFunction& f);
NormEstimate norm_sq_dx(const GaussianFunction& f);

NormEstimate norm_sq_nu(const ExponentialFunction& F, double hbar);
NormEstimate norm_sq_nu(const PolynomialFunction& F, double hbar);
NormEstimate norm_sq_nu(const GaussianFunction& F, double hbar);

/// Monte Carlo norms of a black-box function; sample i uses stream i.
NormEstimate norm_sq_Ps_mc(const HolomorphicFunction& f, const MeasureParams& params, std::size_t samples,
                           std::uint64_t seed);
NormEstimate norm_sq_Msh_mc(const HolomorphicFunction& F, const MeasureParams& params, std::size_t samples,
                            std::uint64_t seed);

/// Bargmann's transform A and C_1 are related by
///   C_1 f(z) = (4 pi)^{-d/4} e^{-z^2/4} A f(z / sqrt 2).
/// These convert one into the other, given the other as a function.
cplx bargmann_from_c1(const HolomorphicFunction& c1f, const ComplexVector& w);
cplx c1_from_bargmann(const HolomorphicFunction& af, const ComplexVector& z);

/// Estimates ||f||^2 under P_s and ||S f||^2 under M_{s,hbar} by independent
/// Monte Carlo ensembles (seed and seed + 1), S f by Gauss-Hermite, and
/// reports the z-score of the difference.
VerificationReport mc_isometry_check(const std::string& name, const HolomorphicFunction& f,
                                     const MeasureParams& params, std::size_t samples, std::uint64_t seed,
                                     double z_threshold = 4.0, int gh_order = 24);

}  // namespace ymcyl
