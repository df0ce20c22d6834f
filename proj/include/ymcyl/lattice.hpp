#pragma once

// Connections on the spatial circle, discretized into N links.
//
// Link k covers [(k-1)/N, k/N] and carries A_k in the Lie algebra; its
// parallel transporter is U_k = exp(A_k / N). The holonomy is
//   h(A) = U_N ... U_1        (later links multiply on the left).
// The norm is the Riemann sum ||A||^2 = (1/N) sum_k |A_k|^2, so the
// coordinates x_{k,a} = A_{k,a} / sqrt(N) are orthonormal.
//
// Gauge transforms live on the N + 1 sites and act on links by
//   U_k -> g_k U_k g_{k-1}^{-1},
// hence h(g.A) = g_N h(A) g_0^{-1}. Based loops (g_0 = g_N = e) leave the
// holonomy unchanged; a path (g_0 = e, g_N = w free) gives h(g.A) = w h(A).

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ymcyl/lie_group.hpp"
#include "ymcyl/report.hpp"
#include "ymcyl/rng.hpp"

namespace ymcyl {

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LatticeConnection {
  std::vector<AlgebraVector> links;

  LatticeConnection() = default;
  explicit LatticeConnection(std::vector<AlgebraVector> l) : links(std::move(l)) {}
  static LatticeConnection zero(int n);
  static LatticeConnection constant(int n, const AlgebraVector& x);
  /// Link k takes the value of a(tau) at the midpoint of its interval.
  static LatticeConnection sample(int n, const std::function<AlgebraVector(double)>& a);
  static LatticeConnection from_coordinates(const std::vector<double>& x);

  int size() const { return static_cast<int>(links.size()); }
  double norm_sq() const;
  double norm() const;
  /// Orthonormal coordinates, 3N of them: x[3k + a] = A_{k,a} / sqrt(N).
  std::vector<double> coordinates() const;
  /// Splits every link in two; the holonomy is unchanged.
  LatticeConnection refine() const;

  friend LatticeConnection operator+(const LatticeConnection& a, const LatticeConnection& b);
  friend LatticeConnection operator-(const LatticeConnection& a, const LatticeConnection& b);
  friend LatticeConnection operator*(double t, const LatticeConnection& a);
};

struct ComplexLatticeConnection {
  std::vector<ComplexAlgebraVector> links;

  ComplexLatticeConnection() = default;
  explicit ComplexLatticeConnection(std::vector<ComplexAlgebraVector> l) : links(std::move(l)) {}
  /// Z = A + i P.
  ComplexLatticeConnection(const LatticeConnection& a, const LatticeConnection& p);

  int size() const { return static_cast<int>(links.size()); }
  LatticeConnection real() const;
  LatticeConnection imag() const;
};

class LatticeGaugeTransform {
 public:
  /// sites.size() == N + 1 with sites[0] = sites[N] = e.
  static LatticeGaugeTransform based_loop(std::vector<GroupElement> sites, double tol = 1e-12);
  /// sites[0] = e; the endpoint sites[N] is free.
  static LatticeGaugeTransform path(std::vector<GroupElement> sites, double tol = 1e-12);
  /// Site values g(k/N) of a continuous map g: [0, 1] -> K.
  static LatticeGaugeTransform path_from(int n, const std::function<GroupElement(double)>& g);

  int size() const { return static_cast<int>(sites_.size()) - 1; }
  const GroupElement& site(int k) const { return sites_.at(static_cast<std::size_t>(k)); }
  const GroupElement& endpoint() const { return sites_.back(); }
  bool is_based_loop() const { return based_; }

 private:
  LatticeGaugeTransform(std::vector<GroupElement> sites, bool based) : sites_(std::move(sites)), based_(based) {}
  std::vector<GroupElement> sites_;
  bool based_;
};

struct ClassicalState {
  LatticeConnection A;
  LatticeConnection P;

  /// H = ||P||^2 / 2.
  double energy() const { return 0.5 * P.norm_sq(); }
};

GroupElement link_transport(const AlgebraVector& a, int n);
GroupElement holonomy(const LatticeConnection& a);
ComplexGroupElement holonomy_complex(const ComplexLatticeConnection& z);
/// exp(Z_k / N) for each link.
std::vector<ComplexGroupElement> link_variables(const ComplexLatticeConnection& z);
/// V_N ... V_1.
ComplexGroupElement holonomy_of_links(const std::vector<ComplexGroupElement>& links);

/// U_k -> g_k U_k g_{k-1}^{-1}, with A_k = N log(U_k) on the principal branch.
/// Throws ShapeMismatch if the transform has the wrong number of sites, and
/// CutLocusError if a transformed link lands on -I.
LatticeConnection gauge_act(const LatticeGaugeTransform& g, const LatticeConnection& a);
/// The same formula for path transforms; h(g.A) = endpoint * h(A).
LatticeConnection path_group_act(const LatticeGaugeTransform& g, const LatticeConnection& a);
/// Complexified transform with site values in SL(2, C).
ComplexLatticeConnection complex_gauge_act(const std::vector<ComplexGroupElement>& sites,
                                           const ComplexLatticeConnection& z);

/// Bi-invariant link distance, d(A, B)^2 = (1/N) sum_k |N log(U_k(A)^{-1} U_k(B))|^2.
/// Invariant under gauge and path transforms, and d(A, 0) = ||A||.
double link_distance(const LatticeConnection& a, const LatticeConnection& b);
/// ||A - B|| in the Riemann-sum norm.
double flat_distance(const LatticeConnection& a, const LatticeConnection& b);

/// Each orthonormal coordinate ~ N(0, s), the lattice form of e^{-||A||^2/2s}.
LatticeConnection sample_Ps(int n, double s, CounterRng& rng);
LatticeConnection sample_Ps(int n, double s, std::uint64_t seed);
/// Real coordinates ~ N(0, r/2), imaginary ~ N(0, hbar/2), r = 2s - hbar.
ComplexLatticeConnection sample_Msh(int n, double s, double hbar, CounterRng& rng);
ComplexLatticeConnection sample_Msh(int n, double s, double hbar, std::uint64_t seed);

ClassicalState free_flow(const ClassicalState& state, double t);

using CylinderFunction = std::function<double(const LatticeConnection&)>;
using ComplexCylinderFunction = std::function<cplx(const ComplexLatticeConnection&)>;

inline constexpr double kDefaultLaplacianStep = 1e-3;

/// Central second differences summed over all 3N orthonormal coordinates.
double lattice_laplacian(const CylinderFunction& f, const LatticeConnection& a, double eta = kDefaultLaplacianStep);
/// The same sum for f = phi(h(A)), using prefix and suffix products so each
/// difference costs O(1) instead of O(N).
double lattice_laplacian_holonomy(const std::function<double(const GroupElement&)>& phi, const LatticeConnection& a,
                                  double eta = kDefaultLaplacianStep);

struct ComplexEstimate {
  cplx value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::size_t samples = 0;
};

/// E F(Z + W) over real Gaussian shifts W with every orthonormal coordinate
/// ~ N(0, hbar): e^{hbar Delta/2} followed by analytic continuation. Sample i
/// uses stream i. With `antithetic`, pairs (W, -W) are averaged into one sample.
ComplexEstimate heat_evolve_mc(const ComplexCylinderFunction& f, const ComplexLatticeConnection& z, double hbar,
                               std::size_t samples, std::uint64_t seed, bool antithetic = false);

struct RadialProfile {
  std::string name;
  std::function<double(double)> f;
};

/// Compares at radius r0 (on the ray at `angle`) the five-point Laplacian of
/// f(|x|) in the plane, f'' + f'/r0, and f'' + (log Vol)' f' with Vol = 2 pi r,
/// all by finite differences of the given step.
VerificationReport submersion_demo(const RadialProfile& profile, double r0, double step = 1e-4,
                                   double tolerance = 1e-6, double angle = 0.3);

/// One row per sample: index, 3N link coordinates, then the holonomy entries
/// as (re, im) pairs in row-major order.
void write_ensemble_csv(std::ostream& out, const std::vector<LatticeConnection>& samples,
                        std::size_t first_index = 0);

}  // namespace ymcyl
