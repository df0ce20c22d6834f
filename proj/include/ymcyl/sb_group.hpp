#pragma once

// The reduced transform on K and K_C, its coherent states, and the checks
// that tie it back to the lattice.
//
// C_hbar phi = analytic continuation of e^{hbar Delta_K / 2} phi. The reduced
// coherent state at g in K_C is
//   psi_g(x) = conj(rho_hbar(g x^{-1})) / rho_s(x)      in L^2(K, rho_s dx),
//   chi_g(x) = conj(rho_hbar(g x^{-1}))                 in L^2(K, dx)   (s = inf),
// and in both cases <psi_g, phi> = (C_hbar phi)(g).

#include <Eigen/Core>

#include <string>
#include <vector>

#include "ymcyl/harmonic.hpp"
#include "ymcyl/lattice.hpp"
#include "ymcyl/report.hpp"

namespace ymcyl {

cplx c_transform_K(const BandLimitedFunction& phi, double hbar, const ComplexGroupElement& g);

struct ReducedCoherentState {
  ComplexGroupElement g;
  double s = kInfiniteTime;
  double hbar = 1.0;
  int cutoff = 1;

  /// Cutoff chosen so the rho_hbar tail at |Im g| is below tol.
  static ReducedCoherentState make(const ComplexGroupElement& g, double s, double hbar, double tol = 1e-15);
  bool limit() const;
  /// psi_g(x) (or chi_g(x) when s is infinite).
  cplx operator()(const GroupElement& x) const;
};

/// <psi_g, phi> in L^2(K, rho_s dx), by a Haar product rule exact on the
/// truncated integrand. Throws TruncationError if the cutoff is too small for g.
cplx coherent_overlap(const ReducedCoherentState& state, const BandLimitedFunction& phi, double tol = 1e-12);

/// g = h_C(Z) with Z drawn from the lattice M_{s,hbar}; sample i uses stream i.
struct MuSample {
  ComplexGroupElement g;
  int n = 0;
  double s = 0.0;
  double hbar = 0.0;
  std::uint64_t seed = 0;
  std::size_t index = 0;
};

MuSample draw_mu(int n, double s, double hbar, std::uint64_t seed, std::size_t index);

struct TestFunction {
  std::string name;
  BandLimitedFunction f;
};

/// Monte Carlo estimate of G_ij = int <phi_i|psi_g><psi_g|phi_j> dmu_{s,hbar}(g).
/// The pairings are the transforms Phi_j(g); only i <= j is sampled and the
/// lower triangle is the conjugate mirror.
struct GramEstimate {
  Eigen::MatrixXcd value;
  Eigen::MatrixXd std_error_re;
  Eigen::MatrixXd std_error_im;
  std::size_t samples = 0;
};

GramEstimate estimate_gram(const std::vector<TestFunction>& phis, double s, double hbar, int n, std::size_t samples,
                           std::uint64_t seed);

/// Exact <phi_i, phi_j> in L^2(K, rho_s dx) (Haar when s is infinite).
Eigen::MatrixXcd exact_gram(const std::vector<TestFunction>& phis, double s);

VerificationReport resolution_check(const std::vector<TestFunction>& phis, double s, double hbar, int n,
                                    std::size_t samples, std::uint64_t seed, double z_threshold = 4.0);

/// The Gram reconstruction at each s against the Haar Gram matrix (the s = inf
/// target), plus E chi_2 of the real-part holonomy. All s share the seed.
VerificationReport nu_limit_study(const std::vector<TestFunction>& phis, double hbar, const std::vector<double>& s_values,
                                  int n, std::size_t samples, std::uint64_t seed, double z_threshold = 4.0);

/// E phi(h_C(Z + W)) with each link shift W_k ~ N(0, N hbar) per coordinate,
/// by a Gauss-Hermite rule on every link. The links are independent and pi_n is
/// a homomorphism, so the expectation is an ordered product of per-link means.
cplx heat_evolve_exact(const BandLimitedFunction& phi, const ComplexLatticeConnection& z, double hbar,
                       int gh_order = 10);

/// LEFT = heat_evolve_mc(phi o h_C, Z, hbar), RIGHT = c_transform_K(phi, hbar, h_C(Z)).
/// Also reports the deterministic lattice value of LEFT.
VerificationReport theorem4_check(const TestFunction& phi, double s, double hbar, int n,
                                  const ComplexLatticeConnection& z, std::size_t samples, std::uint64_t seed,
                                  double z_threshold = 4.0);

/// |LEFT_N - RIGHT_N| from heat_evolve_exact at each N for Z sampled from z(tau);
/// checks that the residual shrinks as N grows.
VerificationReport theorem4_trend(const TestFunction& phi, double hbar,
                                  const std::function<ComplexAlgebraVector(double)>& z, const std::vector<int>& sizes);

/// sites[k] acting on link variables: V_k -> g_k V_k g_{k-1}^{-1}.
std::vector<ComplexGroupElement> gauge_links(const std::vector<ComplexGroupElement>& sites,
                                             const std::vector<ComplexGroupElement>& links);

/// Based complex gauge with g_k = u_k c on interior sites, u_k in K. Every
/// interior step g_k g_{k-1}^{-1} = u_k u_{k-1}^{-1} lies in K.
std::vector<ComplexGroupElement> real_translation_gauge(int n, const std::function<GroupElement(double)>& u,
                                                        const ComplexGroupElement& c);

/// Compares Z with W = N log(gauge_links(sites, V(Z))): holonomies, RIGHT
/// values (bit-level when exact_right is set), and LEFT values by Monte Carlo.
VerificationReport collapse_check(const TestFunction& phi, double hbar, const ComplexLatticeConnection& z,
                                  const std::vector<ComplexGroupElement>& sites, std::size_t samples,
                                  std::uint64_t seed, bool exact_right, double z_threshold = 4.0);

}  // namespace ymcyl
