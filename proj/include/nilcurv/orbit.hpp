#pragma once

// Numerical verification over adjoint orbits: K restricted to the orbit
// A_t = exp(t eta) A exp(-t eta), steepest descent on that orbit, and
// seeded Monte Carlo checks of K >= C.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "nilcurv/combinatorics.hpp"
#include "nilcurv/matrix.hpp"
#include "nilcurv/nilmat.hpp"
#include "nilcurv/random.hpp"

namespace nilcurv {

/// d/dt K(exp(t eta) A exp(-t eta)) at t = 0, by the product rule with
/// dA = [eta, A] and dH = [dA, A^*] + [A, dA^*] for H = [A, A^*].
inline double orbit_directional_derivative(const ComplexMatrix& a, const ComplexMatrix& eta) {
  require_square_nonzero(a, "orbit_directional_derivative");
  if (eta.rows() != a.rows() || eta.cols() != a.cols()) throw domain_error("direction has the wrong shape");
  const ComplexMatrix as = a.adjoint();
  const ComplexMatrix h = commutator(a, as);
  const ComplexMatrix da = commutator(eta, a);
  const ComplexMatrix dh = commutator(da, as) + commutator(a, da.adjoint());
  const double na = norm_sq(a);
  const double nh = norm_sq(h);
  const double d_nh = 2.0 * trace_inner(dh, h).real();
  const double d_na = 2.0 * trace_inner(da, a).real();
  return d_nh / (na * na) - 2.0 * nh * d_na / (na * na * na);
}

/// Gradient of eta -> K(exp(eta) A exp(-eta)) at 0 for the real inner
/// product Re tr(X Y^*): the traceless G with dK(eta) = Re (eta, G).
inline ComplexMatrix orbit_gradient(const ComplexMatrix& a) {
  require_square_nonzero(a, "orbit_gradient");
  const ComplexMatrix as = a.adjoint();
  const ComplexMatrix h = commutator(a, as);
  const double na = norm_sq(a);
  const double nh = norm_sq(h);
  const ComplexMatrix w = (4.0 / (na * na)) * commutator(as, h) - (4.0 * nh / (na * na * na)) * as;
  return commutator(a, w).adjoint();
}

/// Central-difference gradient over the 2n^2 real coordinate directions,
/// projected to trace zero. Used when the analytic step stalls.
inline ComplexMatrix orbit_gradient_fd(const ComplexMatrix& a, double h = 1e-5) {
  const Eigen::Index n = a.rows();
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (const Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(i, j) = unit;
        const double d = (k_value(adjoint_flow(a, e, h)) - k_value(adjoint_flow(a, e, -h))) / (2.0 * h);
        g(i, j) += d * unit;
      }
    }
  }
  const Complex shift = g.trace() / static_cast<double>(n);
  g.diagonal().array() -= shift;
  return g;
}

struct MinimizeOptions {
  int max_iterations = 10000;
  double initial_step = 0.1;
  double backtrack_factor = 0.5;
  double armijo_constant = 1e-4;
  /// Stop when |grad K| <= gradient_tolerance * K.
  double gradient_tolerance = 1e-9;
  int restarts = 8;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_iterations <= 0 || initial_step <= 0.0 || armijo_constant <= 0.0 || gradient_tolerance <= 0.0 ||
        restarts <= 0) {
      throw domain_error("minimize options must be positive");
    }
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) throw domain_error("backtrack_factor must lie in (0, 1)");
  }
};

struct MinimizeResult {
  double min_estimate = 0.0;
  ComplexMatrix argmin;
  int iterations = 0;
  bool converged = false;
  int runs = 0;
  Partition jordan_type;
  Rational target;
  RigidityResult rigidity;
  double gradient_norm = 0.0;
  /// K after every accepted step of the winning run, starting value first.
  std::vector<double> trace;
};

namespace detail {

struct DescentRun {
  ComplexMatrix a;
  double k = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::vector<double> trace;
};

inline ComplexMatrix normalized(const ComplexMatrix& a) { return a / a.norm(); }

/// Armijo backtracking along -g. Once the K change is at rounding level
/// (|g| near sqrt(eps) K), a step is accepted instead when K does not rise
/// beyond rounding and the analytic gradient norm drops. Returns false when
/// no step of length >= min_step qualifies.
inline bool armijo_step(DescentRun& run, const ComplexMatrix& g, double& step, const MinimizeOptions& opts) {
  const double g2 = norm_sq(g);
  const double g_norm = std::sqrt(g2);
  constexpr double min_step = 1e-14;
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * run.k;
  // Keep |t g| <= 2 so exp(t g) stays well conditioned.
  step = std::min(step, 2.0 / g_norm);
  for (double t = step; t >= min_step; t *= opts.backtrack_factor) {
    ComplexMatrix moved = adjoint_flow(run.a, g, -t);
    const double norm = moved.norm();
    if (!std::isfinite(norm) || norm == 0.0 || !all_finite(moved)) continue;
    ComplexMatrix candidate = moved / norm;
    const double k = k_value(candidate);
    if (!std::isfinite(k)) continue;
    const double decrease = opts.armijo_constant * t * g2;
    bool accept = decrease > rounding && k <= run.k - decrease;
    if (!accept && decrease <= rounding && k <= run.k + rounding) {
      accept = orbit_gradient(candidate).norm() < g_norm;
    }
    if (accept) {
      run.a = std::move(candidate);
      run.k = k;
      step = t / opts.backtrack_factor;
      return true;
    }
  }
  return false;
}

inline DescentRun descend(const ComplexMatrix& start, const MinimizeOptions& opts) {
  DescentRun run;
  run.a = normalized(start);
  run.k = k_value(run.a);
  run.trace.push_back(run.k);
  double step = opts.initial_step;
  while (true) {
    ComplexMatrix g = orbit_gradient(run.a);
    run.gradient_norm = g.norm();
    if (run.gradient_norm <= opts.gradient_tolerance * run.k) {
      run.converged = true;
      return run;
    }
    if (run.iterations >= opts.max_iterations) return run;
    if (!armijo_step(run, g, step, opts)) {
      g = orbit_gradient_fd(run.a);
      step = opts.initial_step;
      if (!armijo_step(run, g, step, opts)) return run;
    }
    ++run.iterations;
    run.trace.push_back(run.k);
  }
}

}  // namespace detail

/// Minimizes K over the SL(n, C)-orbit of a nilpotent matrix by steepest
/// descent in the conjugation directions. Run 0 starts at `a`; later runs
/// start at random conjugates of it and are only attempted while no run
/// has converged. The lowest K found is returned.
inline MinimizeResult minimize_k_over_orbit(const ComplexMatrix& a, const MinimizeOptions& opts = {}) {
  opts.validate();
  require_square_nonzero(a, "minimize_k_over_orbit");
  MinimizeResult result;
  result.jordan_type = jordan_type(a);
  result.target = c_constant(result.jordan_type);

  Rng rng = stream_for(opts.seed, 0);
  detail::DescentRun best;
  best.k = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    const ComplexMatrix start = r == 0 ? a : conjugate_by(random_conjugator(a.rows(), rng), a);
    auto run = detail::descend(start, opts);
    ++result.runs;
    const bool better = (run.converged && !best.converged) || (run.converged == best.converged && run.k < best.k);
    if (better) best = std::move(run);
    if (best.converged) break;
  }
  result.min_estimate = best.k;
  result.argmin = best.a;
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.gradient_norm = best.gradient_norm;
  result.trace = std::move(best.trace);
  result.rigidity = rigidity_residual(best.a);
  return result;
}

// Monte Carlo verification.

struct VerificationReport {
  std::string spec_kind;  // "partition" or "composition"
  std::string spec;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  Rational bound;
  double min_observed = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  /// min over samples of K - bound.
  double worst_margin = std::numeric_limits<double>::infinity();
  // Nondeterministic fields; excluded from determinism comparisons.
  double elapsed_seconds = 0.0;
  std::string timestamp;
};

using InequalitySpec = std::variant<Partition, Composition>;

constexpr double kViolationSlack = 1e-9;

/// Seed of sample `index` in a run seeded with `seed`.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) { return mix64(mix64(seed) + index); }

/// Nondegenerate partitions mu <= lambda; the Jordan types sampled for a
/// partition campaign.
inline std::vector<Partition> dominated_types(const Partition& lambda) {
  std::vector<Partition> out;
  for (auto& mu : partitions_of(lambda.total())) {
    if (!mu.is_degenerate() && dominated_or_equal(mu, lambda)) out.push_back(std::move(mu));
  }
  return out;
}

/// g X^mu g^{-1} for mu drawn uniformly from `types` and a Ginibre g.
inline ComplexMatrix sample_orbit_point(const std::vector<Partition>& types, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
  const Partition& mu = types[pick(rng)];
  const ComplexMatrix g = random_conjugator(mu.total(), rng);
  return conjugate_by(g, standard_nilpotent(mu));
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Called after each chunk with (done, total, running min K).
  std::function<void(std::size_t, std::size_t, double)> progress;
  std::size_t chunk = 1000;
  /// A sample violates when K < bound - slack.
  double slack = kViolationSlack;
};

/// Checks K(A) >= bound on random samples. For a partition lambda the
/// samples are g X^mu g^{-1} with mu <= lambda and bound = C_lambda; for a
/// composition R they are random type-R matrices and bound = C_{R^t}.
/// Per-sample streams make the report independent of `workers`.
inline VerificationReport verify_inequality(const InequalitySpec& spec, const VerifyOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  VerificationReport report;
  report.seed = opts.seed;
  report.samples = opts.samples;
  report.timestamp = utc_timestamp();

  std::function<double(std::size_t)> sample;
  std::vector<Partition> types;
  if (const auto* lambda = std::get_if<Partition>(&spec)) {
    if (lambda->is_degenerate()) throw degenerate_error("verify: partition (" + lambda->to_string() + ") is degenerate");
    report.spec_kind = "partition";
    report.spec = lambda->to_string();
    report.bound = c_constant(*lambda);
    types = dominated_types(*lambda);
    sample = [&types, &opts](std::size_t i) {
      Rng rng = stream_for(opts.seed, i);
      return k_value(sample_orbit_point(types, rng));
    };
  } else {
    const auto& r = std::get<Composition>(spec);
    require_nondegenerate_type(r, "verify");
    report.spec_kind = "composition";
    report.spec = r.to_string();
    report.bound = c_constant(conjugate_composition(r));
    sample = [&r, &opts](std::size_t i) { return k_value(random_type_R(r, sample_seed(opts.seed, i))); };
  }

  const double bound = report.bound.to_double();
  std::vector<double> values(opts.samples, 0.0);
  const unsigned workers = std::max(1u, opts.workers);
  const std::size_t chunk = std::max<std::size_t>(1, opts.chunk);
  for (std::size_t begin = 0; begin < opts.samples; begin += chunk) {
    const std::size_t end = std::min(opts.samples, begin + chunk);
    auto work = [&](unsigned w) {
      for (std::size_t i = begin + w; i < end; i += workers) values[i] = sample(i);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (std::size_t i = begin; i < end; ++i) {
      report.min_observed = std::min(report.min_observed, values[i]);
      report.worst_margin = std::min(report.worst_margin, values[i] - bound);
      if (values[i] < bound - opts.slack) ++report.violations;
    }
    if (opts.progress) opts.progress(end, opts.samples, report.min_observed);
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace nilcurv
