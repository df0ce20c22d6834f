#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ymcyl/harmonic.hpp"
#include "ymcyl/harness.hpp"
#include "ymcyl/lattice.hpp"
#include "ymcyl/rng.hpp"
#include "ymcyl/sb_flat.hpp"
#include "ymcyl/sb_group.hpp"

namespace ymcyl {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    out.push_back(cur);
  }
  return out;
}

// Typed access to the effective config with field-level errors.
class Params {
 public:
  explicit Params(std::map<std::string, std::string> v) : v_(std::move(v)) {}

  const std::string& str(const std::string& key) const { return v_.at(key); }

  double real(const std::string& key) const { return parse_real(key, str(key)); }

  double positive(const std::string& key) const {
    const double x = real(key);
    if (!(x > 0.0)) throw ConfigError(key, "must be positive, got '" + str(key) + "'");
    return x;
  }

  int integer(const std::string& key, int min) const { return parse_int(key, str(key), min); }

  std::size_t count(const std::string& key) const {
    const std::string& s = str(key);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-' || v == 0)
      throw ConfigError(key, "expected a positive integer, got '" + s + "'");
    return static_cast<std::size_t>(v);
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split(str(key))) out.push_back(parse_real(key, item));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

  std::vector<int> ints(const std::string& key, int min) const {
    std::vector<int> out;
    for (const auto& item : split(str(key))) out.push_back(parse_int(key, item, min));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

  std::vector<TestFunction> functions(const std::string& key) const {
    std::vector<TestFunction> out;
    for (const auto& item : split(str(key))) {
      if (item == "1") {
        out.push_back({item, BandLimitedFunction::constant(1.0)});
      } else if (item.rfind("chi", 0) == 0) {
        out.push_back({item, BandLimitedFunction::character(parse_int(key, item.substr(3), 1))});
      } else {
        throw ConfigError(key, "unknown test function '" + item + "' (use 1 or chiN)");
      }
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

 private:
  static double parse_real(const std::string& key, const std::string& s) {
    if (s == "inf") return kInfiniteTime;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty() || std::isnan(v)) throw ConfigError(key, "expected a number, got '" + s + "'");
    return v;
  }

  static int parse_int(const std::string& key, const std::string& s, int min) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ConfigError(key, "expected an integer, got '" + s + "'");
    if (v < min) throw ConfigError(key, "must be at least " + std::to_string(min) + ", got " + s);
    return static_cast<int>(v);
  }

  std::map<std::string, std::string> v_;
};

void require_s_hbar(double s, double hbar, const char* s_key = "s") {
  if (!(s > hbar / 2.0)) throw ConfigError(s_key, "need s > hbar/2 (s = " + fmt(s) + ", hbar = " + fmt(hbar) + ")");
}

double chi_real(int n, const GroupElement& x) { return character(n, ComplexGroupElement(x)).real(); }

// -- heat-semigroup -----------------------------------------------------------

VerificationReport heat_semigroup_experiment(const Params& p, std::uint64_t) {
  const auto times = p.reals("times");
  for (double t : times)
    if (!(t > 0.0) || std::isinf(t)) throw ConfigError("times", "times must be positive and finite");
  const int grid = p.integer("grid", 2);
  const int max_rep = p.integer("max_rep", 1);
  const double tol = p.positive("tolerance");

  VerificationReport r;
  for (int n = 1; n <= max_rep; ++n) {
    const double oracle = (n * n - 1) / 4.0;
    r.add_check("casimir.n=" + std::to_string(n), casimir(n), oracle, 0.0, casimir(n) - oracle, 1e-12);
  }

  const auto rule = haar_quadrature({grid, grid, grid});
  for (double t : times) {
    const std::string tag = "t=" + fmt(t) + ".";
    const HeatKernelSeries series(t, max_rep);
    r.add_check(tag + "normalization.coefficient", series.coefficient(1), 1.0, 0.0, series.coefficient(1) - 1.0, 0.0);
    double mass = 0.0;
    for (const auto& q : rule) mass += q.weight * heat_kernel(t, q.x);
    r.add_info(tag + "normalization.quadrature", mass, 1.0, 0.0, mass - 1.0);
    double eig = 0.0;
    for (int n = 1; n <= max_rep; ++n) {
      const auto chi = BandLimitedFunction::character(n);
      const auto evolved = heat_semigroup(chi, t);
      const double factor = std::exp(-t * casimir(n) / 2.0);
      for (int m = 1; m <= chi.cutoff(); ++m) eig = std::max(eig, (evolved.block(m) - factor * chi.block(m)).cwiseAbs().maxCoeff());
    }
    r.add_check(tag + "eigenfunction.coefficients", eig, 0.0, 0.0, eig, 0.0);
  }

  // max over a grid^3 Euler-angle grid of |rho_t * rho_s - rho_{t+s}|. The
  // convolution depends only on the conjugacy class, so it is memoized on the
  // half angle; rho_{t+s} is evaluated at the grid point itself.
  std::vector<GroupElement> xs;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      for (int k = 0; k < grid; ++k) {
        const double alpha = 4.0 * std::numbers::pi * i / grid;
        const double beta = std::numbers::pi * j / (grid - 1);
        const double gamma = 4.0 * std::numbers::pi * k / grid;
        xs.push_back(exp_group({{0.0, 0.0, alpha}}) * exp_group({{0.0, beta, 0.0}}) * exp_group({{0.0, 0.0, gamma}}));
      }
    }
  }
  std::vector<double> angles;
  for (const auto& x : xs) angles.push_back(half_angle(x));
  for (std::size_t a = 0; a < times.size(); ++a) {
    for (std::size_t b = a; b < times.size(); ++b) {
      const double t = times[a], s = times[b];
      std::map<long long, double> memo;
      double worst = 0.0, at_worst = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const long long key = std::llround(angles[k] * 1e12);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, heat_convolution(t, s, xs[k])).first;
        const double want = heat_kernel(t + s, xs[k]);
        if (std::abs(it->second - want) >= worst) {
          worst = std::abs(it->second - want);
          at_worst = want;
        }
      }
      r.add_check("semigroup.t=" + fmt(t) + ".s=" + fmt(s), at_worst + worst, at_worst, 0.0, worst, tol);
      r.add_info("semigroup.t=" + fmt(t) + ".s=" + fmt(s) + ".classes", static_cast<double>(memo.size()));
    }
  }
  return r;
}

// -- flat-isometry --------------------------------------------------------------

VerificationReport flat_isometry_experiment(const Params& p, std::uint64_t seed) {
  const MeasureParams params{p.integer("dim", 1), p.positive("s"), p.positive("hbar")};
  require_s_hbar(params.s, params.hbar);
  const std::size_t draws = p.count("draws");
  const std::size_t samples = p.count("samples");
  const double tol = p.positive("tolerance");
  const int d = params.dim;

  VerificationReport r;
  // Closed-form norms on random exponentials and random (s, hbar).
  CounterRng rng(seed ^ 0x9e3779b97f4a7c15ULL, 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double s = 0.5 + 2.5 * rng.uniform();
    const MeasureParams q{d, s, 2.0 * s * rng.uniform()};
    ExponentialFunction f{cplx(rng.normal(), rng.normal()), RealVector(static_cast<std::size_t>(d))};
    for (int k = 0; k < d; ++k) f.a[k] = rng.normal();
    const double lhs = norm_sq_Ps(f, q).value;
    const double rhs = norm_sq_Msh(heat_transform(f, q.hbar), q).value;
    worst = std::max(worst, std::abs(lhs - rhs) / lhs);
  }
  r.add_check("exponential.closed_form.max_relative", worst, 0.0, 0.0, worst, tol);

  const std::vector<std::pair<std::string, HolomorphicFunction>> fs{
      {"exp", [](const ComplexVector& z) { return std::exp(z[0]); }},
      {"square", [](const ComplexVector& z) { return z[0] * z[0]; }},
      {"sin", [d](const ComplexVector& z) { return std::sin(z[0]) + 0.5 * z[d - 1]; }},
  };
  std::uint64_t k = 0;
  for (const auto& [name, f] : fs) {
    r.merge(mc_isometry_check(name, f, params, samples, seed + 2 * k), "");
    ++k;
  }
  return r;
}

// -- pushforward ---------------------------------------------------------------

VerificationReport pushforward_experiment(const Params& p, std::uint64_t seed) {
  const int n = p.integer("N", 1);
  const auto s_values = p.reals("s");
  const auto reps = p.ints("reps", 1);
  const std::size_t samples = p.count("samples");
  VerificationReport r;
  for (double s : s_values) {
    if (!(s > 0.0) || std::isinf(s)) throw ConfigError("s", "must be positive and finite");
    const auto est = sample_moments(samples, reps.size(), [&](std::size_t i, double* out) {
      CounterRng rng(seed, i);
      const GroupElement h = holonomy(sample_Ps(n, s, rng));
      for (std::size_t k = 0; k < reps.size(); ++k) out[k] = chi_real(reps[k], h);
    });
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const int m = reps[k];
      const double target = m * std::exp(-s * casimir(m) / 2.0);
      r.add_check("s=" + fmt(s) + ".E[chi" + std::to_string(m) + "]", est.mean[k], target, est.std_error[k],
                  z_score(est.mean[k], est.std_error[k], target, 0.0), 4.0);
    }
  }
  return r;
}

// -- laplacian-reduction --------------------------------------------------------

VerificationReport laplacian_experiment(const Params& p, std::uint64_t seed) {
  const auto reps = p.ints("reps", 1);
  const int connections = p.integer("connections", 1);
  const auto sizes = p.ints("sizes", 1);
  const double amplitude = p.positive("amplitude");
  const double step = p.positive("step");
  const double max_rel = p.positive("max_relative");
  const double min_order = p.real("min_order");
  if (sizes.size() < 2) throw ConfigError("sizes", "need at least two lattice sizes");
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (sizes[k] <= sizes[k - 1]) throw ConfigError("sizes", "must increase");

  // Smooth random connections X0 + X1 cos(2 pi tau) + X2 sin(2 pi tau).
  std::vector<std::array<AlgebraVector, 3>> family;
  for (int c = 0; c < connections; ++c) {
    CounterRng rng(seed, static_cast<std::uint64_t>(c));
    std::array<AlgebraVector, 3> x;
    for (auto& v : x)
      for (double& e : v.c) e = amplitude * rng.normal();
    family.push_back(x);
  }

  VerificationReport r;
  for (int rep : reps) {
    const std::string tag = "chi" + std::to_string(rep) + ".";
    std::vector<double> mean_err, rel;
    for (int n : sizes) {
      double err = 0.0, ref = 0.0;
      for (const auto& x : family) {
        const auto a = LatticeConnection::sample(n, [&](double tau) {
          const double w = 2.0 * std::numbers::pi * tau;
          AlgebraVector v;
          for (int i = 0; i < 3; ++i) v.c[i] = x[0].c[i] + x[1].c[i] * std::cos(w) + x[2].c[i] * std::sin(w);
          return v;
        });
        const double lap = lattice_laplacian_holonomy([rep](const GroupElement& g) { return chi_real(rep, g); }, a, step);
        const double want = -casimir(rep) * chi_real(rep, holonomy(a));
        err += std::abs(lap - want);
        ref += std::abs(want);
      }
      mean_err.push_back(err / connections);
      rel.push_back(err / ref);
      r.add_info(tag + "N=" + std::to_string(n) + ".mean_error", err / connections);
      r.add_info(tag + "N=" + std::to_string(n) + ".relative_deviation", err / ref);
    }
    for (std::size_t k = 1; k < sizes.size(); ++k) {
      const double order = std::log(mean_err[k - 1] / mean_err[k]) / std::log(double(sizes[k]) / sizes[k - 1]);
      r.add_info(tag + "order." + std::to_string(sizes[k - 1]) + "-" + std::to_string(sizes[k]), order);
      r.add_check(tag + "decreasing.N=" + std::to_string(sizes[k]), mean_err[k], mean_err[k - 1], 0.0,
                  std::max(0.0, mean_err[k] - mean_err[k - 1]), 0.0);
    }
    // Least-squares slope of log error against log N.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const double lx = std::log(double(sizes[k])), ly = std::log(mean_err[k]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double order = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    r.add_check(tag + "order", order, min_order, 0.0, std::max(0.0, min_order - order), 0.0);
    r.add_check(tag + "relative_deviation.N=" + std::to_string(sizes.back()), rel.back(), 0.0, 0.0, rel.back(), max_rel);
  }
  return r;
}

// -- coherent-overlap --------------------------------------------------------------

VerificationReport coherent_overlap_experiment(const Params& p, std::uint64_t seed) {
  const auto hbars = p.reals("hbar");
  const auto s_values = p.reals("s");
  const int draws = p.integer("draws", 1);
  const double max_imag = p.real("max_imag");
  const auto reps = p.ints("reps", 1);
  const double tol = p.positive("tolerance");
  for (double h : hbars)
    if (!(h > 0.0) || std::isinf(h)) throw ConfigError("hbar", "must be positive and finite");
  for (double s : s_values)
    if (!(s > 0.0)) throw ConfigError("s", "must be positive (or inf)");
  if (!(max_imag >= 0.0)) throw ConfigError("max_imag", "must be non-negative");

  std::vector<ComplexGroupElement> gs;
  CounterRng rng(seed, 0);
  for (int i = 0; i < draws; ++i) {
    const GroupElement x = haar_sample(rng);
    AlgebraVector y{{rng.normal(), rng.normal(), rng.normal()}};
    const double scale = max_imag * rng.uniform() / y.norm();
    for (double& c : y.c) c *= scale;
    gs.push_back(polar_compose(x, y));
  }
  VerificationReport r;
  for (double hbar : hbars) {
    for (double s : s_values) {
      std::vector<double> worst(reps.size(), 0.0);
      for (const auto& g : gs) {
        const auto state = ReducedCoherentState::make(g, s, hbar);
        for (std::size_t k = 0; k < reps.size(); ++k) {
          const auto phi = BandLimitedFunction::character(reps[k]);
          worst[k] = std::max(worst[k], std::abs(coherent_overlap(state, phi) - c_transform_K(phi, hbar, g)));
        }
      }
      for (std::size_t k = 0; k < reps.size(); ++k)
        r.add_check("hbar=" + fmt(hbar) + ".s=" + fmt(s) + ".chi" + std::to_string(reps[k]), worst[k], 0.0, 0.0,
                    worst[k], tol);
    }
  }
  return r;
}

// -- resolution / nu-limit -----------------------------------------------------------

VerificationReport resolution_experiment(const Params& p, std::uint64_t seed) {
  const double s = p.positive("s"), hbar = p.positive("hbar");
  require_s_hbar(s, hbar);
  if (std::isinf(s)) throw ConfigError("s", "must be finite; use nu-limit for the s -> inf target");
  return resolution_check(p.functions("functions"), s, hbar, p.integer("N", 1), p.count("samples"), seed);
}

VerificationReport nu_limit_experiment(const Params& p, std::uint64_t seed) {
  const double hbar = p.positive("hbar");
  const auto s_values = p.reals("s");
  for (std::size_t k = 0; k < s_values.size(); ++k) {
    require_s_hbar(s_values[k], hbar);
    if (std::isinf(s_values[k])) throw ConfigError("s", "schedule entries must be finite");
    if (k > 0 && !(s_values[k] > s_values[k - 1])) throw ConfigError("s", "schedule must increase");
  }
  return nu_limit_study(p.functions("functions"), hbar, s_values, p.integer("N", 1), p.count("samples"), seed);
}

// -- theorem4 ---------------------------------------------------------------------

ComplexAlgebraVector smooth_complex_connection(double tau, double im) {
  const double w = 2.0 * std::numbers::pi * tau;
  const AlgebraVector re{{0.6 + 0.3 * std::cos(w), -0.4, 0.5 * std::sin(w)}};
  const AlgebraVector ip{{im * std::cos(w), im * std::sin(w), 0.0}};
  return ComplexAlgebraVector(re, ip);
}

ComplexLatticeConnection sample_complex_connection(int n, double im) {
  std::vector<ComplexAlgebraVector> links;
  for (int k = 0; k < n; ++k) links.push_back(smooth_complex_connection((k + 0.5) / n, im));
  return ComplexLatticeConnection(links);
}

VerificationReport theorem4_experiment(const Params& p, std::uint64_t seed) {
  const double s = p.positive("s"), hbar = p.positive("hbar");
  require_s_hbar(s, hbar);
  const auto phis = p.functions("functions");
  const auto sizes = p.ints("sizes", 2);
  const auto imags = p.reals("imag");
  const std::size_t samples = p.count("samples");
  const auto trend = p.ints("trend", 1);
  const std::size_t collapse_samples = p.count("collapse_samples");

  VerificationReport r;
  std::uint64_t stream = 0;
  for (const auto& phi : phis) {
    for (double im : imags) {
      for (int n : sizes) {
        r.merge(theorem4_check(phi, s, hbar, n, sample_complex_connection(n, im), samples, seed + 2 + stream++),
                "im=" + fmt(im) + ".N=" + std::to_string(n) + ".");
      }
    }
    const double im = *std::max_element(imags.begin(), imags.end());
    r.merge(theorem4_trend(phi, hbar, [im](double t) { return smooth_complex_connection(t, im); }, trend), "trend.");
  }

  // Collapse: a based complex gauge with real interior translation parts.
  const int n = sizes.front();
  const auto z = sample_complex_connection(n, *std::max_element(imags.begin(), imags.end()));
  const auto& phi = phis.back();
  const ComplexGroupElement dyadic(Mat2{{2.0, 0.0, 0.0, 0.5}});
  r.merge(collapse_check(phi, hbar, z, real_translation_gauge(n, [](double) { return GroupElement(); }, dyadic),
                         collapse_samples, seed, true),
          "collapse.exact.");
  const ComplexGroupElement c =
      exp_complex(ComplexAlgebraVector(AlgebraVector{{0.1, 0.0, -0.2}}, AlgebraVector{{0.3, 0.2, -0.1}}));
  const auto u = [](double t) { return exp_group(AlgebraVector{{1.2 * std::sin(std::numbers::pi * t), -0.7 * t, 0.4}}); };
  r.merge(collapse_check(phi, hbar, z, real_translation_gauge(n, u, c), collapse_samples, seed + 1, false),
          "collapse.smooth.");
  return r;
}

// -- submersion-demo -----------------------------------------------------------------

VerificationReport submersion_experiment(const Params& p, std::uint64_t) {
  const std::string name = p.str("profile");
  const double r0 = p.positive("r0");
  const double step = p.positive("step");
  const double tol = p.positive("tolerance");
  const double angle = p.real("angle");
  // Profiles with their exact planar Laplacian f'' + f'/r.
  std::function<double(double)> f, lap;
  if (name == "r2") {
    f = [](double r) { return r * r; };
    lap = [](double) { return 4.0; };
  } else if (name == "r4") {
    f = [](double r) { return r * r * r * r; };
    lap = [](double r) { return 16.0 * r * r; };
  } else if (name == "gaussian") {
    f = [](double r) { return std::exp(-r * r); };
    lap = [](double r) { return (4.0 * r * r - 4.0) * std::exp(-r * r); };
  } else if (name == "cos") {
    f = [](double r) { return std::cos(r); };
    lap = [](double r) { return -std::cos(r) - std::sin(r) / r; };
  } else {
    throw ConfigError("profile", "unknown profile '" + name + "' (r2, r4, gaussian, cos)");
  }
  VerificationReport r = submersion_demo({name, f}, r0, step, tol, angle);
  const double exact = lap(r0);
  const double fd = r.rows.at(0).estimate, radial = r.rows.at(1).estimate;
  r.add_check(name + ".laplacian_2d-exact", fd, exact, 0.0, fd - exact, tol);
  r.add_check(name + ".radial_formula-exact", radial, exact, 0.0, radial - exact, tol);
  return r;
}

// -- classical-flow ----------------------------------------------------------------

VerificationReport classical_flow_experiment(const Params& p, std::uint64_t seed) {
  const int n = p.integer("N", 1);
  const double s = p.positive("s");
  const auto times = p.reals("times");
  CounterRng rng(seed, 0);
  const ClassicalState state{sample_Ps(n, s, rng), sample_Ps(n, s, rng)};
  VerificationReport r;
  for (double t : times) {
    const std::string tag = "t=" + fmt(t) + ".";
    const auto moved = free_flow(state, t);
    r.add_check(tag + "energy", moved.energy(), state.energy(), 0.0, moved.energy() - state.energy(), 0.0);
    const auto twice = free_flow(free_flow(state, t / 2), t / 2);
    const double comp = link_distance(twice.A, moved.A);
    r.add_check(tag + "flow_composition", comp, 0.0, 0.0, comp, 1e-12 * (1.0 + moved.A.norm()));
  }
  // Constant A with a commuting constant momentum: covariantly constant, so
  // the reduced motion is the geodesic h(A) e^{tX}.
  AlgebraVector x{{rng.normal(), rng.normal(), rng.normal()}};
  const ClassicalState flat{LatticeConnection::constant(n, x), LatticeConnection::constant(n, 0.7 * x)};
  AlgebraVector y{{rng.normal(), rng.normal(), rng.normal()}};
  const ClassicalState twisted{flat.A, LatticeConnection::constant(n, y)};
  for (double t : times) {
    const std::string tag = "t=" + fmt(t) + ".";
    const GroupElement geo = holonomy(flat.A) * exp_group(t * 0.7 * x);
    const double dev = distance(holonomy(free_flow(flat, t).A).matrix(), geo.matrix());
    r.add_check(tag + "reduced_geodesic", dev, 0.0, 0.0, dev, 1e-12);
    // Without the moment constraint the holonomy leaves the geodesic.
    const GroupElement off = holonomy(twisted.A) * exp_group(t * y);
    r.add_info(tag + "unconstrained_deviation", distance(holonomy(free_flow(twisted, t).A).matrix(), off.matrix()));
  }
  return r;
}

using Runner = VerificationReport (*)(const Params&, std::uint64_t);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"heat-semigroup", "harmonic::heat_semigroup",
        "semigroup law of rho_t over an Euler-angle grid, normalization and eigenfunctions",
        {{"times", "0.25,0.5,1"}, {"grid", "32"}, {"max_rep", "8"}, {"tolerance", "1e-8"}}},
       heat_semigroup_experiment},
      {{"flat-isometry", "sb_flat::mc_isometry_check", "unitarity of the flat transform, closed form and Monte Carlo",
        {{"dim", "1"}, {"s", "1"}, {"hbar", "0.5"}, {"draws", "50"}, {"samples", "1000000"}, {"tolerance", "1e-12"}}},
       flat_isometry_experiment},
      {{"pushforward", "lattice_cylinder::sample_Ps", "holonomy of P_s samples against the heat kernel moments",
        {{"N", "64"}, {"s", "0.5,1"}, {"reps", "2,3,4"}, {"samples", "1000000"}}},
       pushforward_experiment},
      {{"laplacian-reduction", "lattice_cylinder::lattice_laplacian",
        "lattice Laplacian of phi(h(A)) against (Delta_K phi)(h(A))",
        {{"reps", "2,3"},
         {"connections", "20"},
         {"sizes", "8,16,32,64"},
         {"amplitude", "1"},
         {"step", "1e-3"},
         {"max_relative", "0.05"},
         {"min_order", "1"}}},
       laplacian_experiment},
      {{"coherent-overlap", "sb_group::coherent_overlap", "reproducing identity of the reduced coherent states",
        {{"hbar", "0.25,0.5"}, {"s", "1,inf"}, {"draws", "20"}, {"max_imag", "1.5"}, {"reps", "1,2,3"}, {"tolerance", "1e-8"}}},
       coherent_overlap_experiment},
      {{"resolution", "sb_group::resolution_check", "Gram reconstruction over lattice-sampled mu_{s,hbar}",
        {{"s", "1"}, {"hbar", "0.5"}, {"N", "128"}, {"samples", "100000"}, {"functions", "1,chi2,chi3"}}},
       resolution_experiment},
      {{"nu-limit", "sb_group::nu_limit_study", "Gram reconstruction against Haar as s grows",
        {{"hbar", "0.5"}, {"s", "2,8,32"}, {"N", "512"}, {"samples", "100000"}, {"functions", "1,chi2,chi3"}}},
       nu_limit_experiment},
      {{"theorem4", "sb_group::theorem4_check", "lattice heat evolution against the group transform, and collapse",
        {{"s", "1"},
         {"hbar", "0.5"},
         {"functions", "chi2,chi3"},
         {"sizes", "32,64"},
         {"imag", "0,0.5"},
         {"samples", "100000"},
         {"trend", "8,16,32,64"},
         {"collapse_samples", "100000"}}},
       theorem4_experiment},
      {{"submersion-demo", "lattice_cylinder::submersion_demo", "radial Laplacian in the plane by finite differences",
        {{"profile", "r2"}, {"r0", "1.3"}, {"step", "1e-4"}, {"tolerance", "1e-6"}, {"angle", "0.3"}}},
       submersion_experiment},
      {{"classical-flow", "lattice_cylinder::free_flow", "free motion on connections and its reduction to geodesics",
        {{"N", "16"}, {"s", "1"}, {"times", "0.5,1,2"}}},
       classical_flow_experiment},
  };
  return entries;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.info.name == name) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.info.name;
  throw ConfigError("experiment", "unknown experiment '" + name + "' (known: " + known + ")");
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(const std::string& name) { return find_entry(name).info; }

VerificationReport run(const ExperimentConfig& config) {
  if (config.experiment.empty()) throw ConfigError("experiment", "missing");
  const Entry& entry = find_entry(config.experiment);
  std::map<std::string, std::string> values = entry.info.defaults;
  for (const auto& [k, v] : config.values) {
    if (!values.count(k)) throw ConfigError(k, "not a parameter of experiment '" + config.experiment + "'");
    values[k] = v;
  }
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report = entry.run(Params(values), config.seed);
  report.experiment = config.experiment;
  report.seed = config.seed;
  report.inputs.clear();
  for (const auto& [k, v] : values) report.add_input(k, v);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ymcyl
