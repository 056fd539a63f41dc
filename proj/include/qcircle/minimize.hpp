#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcircle/common.hpp"
#include "qcircle/experiments.hpp"
#include "qcircle/families.hpp"
#include "qcircle/fourier_state.hpp"
#include "qcircle/measures.hpp"
#include "qcircle/random.hpp"

namespace qcircle {

struct RestartResult {
  int index = 0;
  std::string seed_kind;  // "coherent", "cat", or "random"
  double start_value = 0.0;
  double final_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct MinimizationReport {
  std::string method;
  double best_value = 0.0;
  FourierState best_state;
  std::vector<RestartResult> restarts;
  double coherent_value = 0.0;         // coherent(l=0) on the same lattice
  double cat_value = 0.0;              // cat(l=0, alpha=0, phase=0) on the same lattice
  bool below_one = false;
  double overlap_cat_canonical = 0.0;  // |<best|cat(0,0,0)>|^2
  double overlap_cat_matched = 0.0;    // max over (alpha, phase) grid at l = round(<J>_best)
  bool non_convergence = false;        // some restart hit max_iters without settling
};

namespace detail {

// Objective over the ambient real vector (re parts, then im parts); the state
// is projected to the unit sphere before evaluation, so the objective is
// scale-invariant along rays.
class SumObjective {
 public:
  SumObjective(int n_min, int n_max) : n_min_(n_min), n_max_(n_max) {}

  int dimension() const { return 2 * (n_max_ - n_min_ + 1); }

  FourierState to_state(const std::vector<double>& x) const {
    const int len = n_max_ - n_min_ + 1;
    FourierState s{n_min_, n_max_, std::vector<Complex>(static_cast<std::size_t>(len))};
    for (int i = 0; i < len; ++i)
      s.coeffs[static_cast<std::size_t>(i)] =
          Complex{x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(len + i)]};
    return normalize(s);
  }

  static std::vector<double> to_vector(const FourierState& s) {
    const std::size_t len = s.coeffs.size();
    std::vector<double> x(2 * len);
    for (std::size_t i = 0; i < len; ++i) {
      x[i] = s.coeffs[i].real();
      x[len + i] = s.coeffs[i].imag();
    }
    return x;
  }

  double operator()(const std::vector<double>& x) const { return uncertainty_sum(to_state(x)); }

 private:
  int n_min_;
  int n_max_;
};

inline void project_unit(std::vector<double>& x) {
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  const double n = std::sqrt(n2);
  if (n < kZeroNormFloor) throw ZeroNormError("minimize: zero parameter vector");
  for (double& v : x) v /= n;
}

struct DescentOutcome {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Monotone projected-gradient descent: central-difference gradient, tangent
// projection, backtracking line search. Accepted values never increase, so a
// restart can only end at or below its (finite) starting value.
inline DescentOutcome descend(const SumObjective& f, std::vector<double> x, GaussianRng& rng,
                              int max_iters, double step_tol) {
  project_unit(x);
  double fx = f(x);

  // A seed with an infinite sum (e.g. a J-eigenstate) has no usable gradient;
  // probe deterministic random directions until any finite neighbour is found.
  for (double scale = 1e-3; std::isinf(fx) && scale <= 1e3; scale *= 10.0) {
    for (int attempt = 0; attempt < 8 && std::isinf(fx); ++attempt) {
      std::vector<double> probe = x;
      for (double& v : probe) v += scale * rng.gaussian();
      project_unit(probe);
      const double fp = f(probe);
      if (fp < fx) {
        x = probe;
        fx = fp;
      }
    }
  }

  const int dim = f.dimension();
  const double h = 1e-6;
  double step = 0.1;
  int stall = 0;

  DescentOutcome out;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    std::vector<double> grad(static_cast<std::size_t>(dim));
    std::vector<double> probe = x;
    for (int i = 0; i < dim; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double xi = x[ui];
      probe[ui] = xi + h;
      const double fp = f(probe);
      probe[ui] = xi - h;
      const double fm = f(probe);
      probe[ui] = xi;
      grad[ui] = (fp - fm) / (2.0 * h);
    }
    // Remove the radial component; the objective is constant along rays.
    double gdotx = 0.0;
    for (int i = 0; i < dim; ++i)
      gdotx += grad[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    double gnorm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      grad[ui] -= gdotx * x[ui];
      gnorm2 += grad[ui] * grad[ui];
    }
    if (std::sqrt(gnorm2) < step_tol) {
      out.converged = true;
      break;
    }

    bool accepted = false;
    for (double eta = step; eta > 1e-16; eta *= 0.5) {
      std::vector<double> trial = x;
      for (int i = 0; i < dim; ++i)
        trial[static_cast<std::size_t>(i)] -= eta * grad[static_cast<std::size_t>(i)];
      project_unit(trial);
      const double ft = f(trial);
      if (ft < fx) {
        const double gain = fx - ft;
        x = std::move(trial);
        fx = ft;
        step = std::min(eta * 2.0, 1.0);
        accepted = true;
        stall = (gain < step_tol) ? stall + 1 : 0;
        break;
      }
    }
    if (!accepted || stall >= 3) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  out.iterations = iter;
  return out;
}

// Cat profile without the family-constructor tail guard, for overlap matching
// at arbitrary centroids on a small lattice.
inline FourierState raw_cat_profile(double l, double alpha, double phase, int n_min, int n_max) {
  FourierState s{n_min, n_max, std::vector<Complex>(static_cast<std::size_t>(n_max - n_min + 1))};
  const Complex w = std::polar(1.0, phase);
  for (int n = n_min; n <= n_max; ++n) {
    const double d = static_cast<double>(n) - l;
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    s.coeffs[static_cast<std::size_t>(n - n_min)] =
        std::exp(-d * d / 2.0) * std::polar(1.0, -n * alpha) * (1.0 + w * parity);
  }
  return normalize(s);
}

// Global phase gauge: largest-magnitude coefficient made real positive.
inline FourierState fix_gauge(const FourierState& s) {
  std::size_t imax = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (std::abs(s.coeffs[i]) > best) {
      best = std::abs(s.coeffs[i]);
      imax = i;
    }
  }
  if (best <= 0.0) return s;
  const Complex rot = std::conj(s.coeffs[imax]) / best;
  FourierState out = s;
  for (Complex& c : out.coeffs) c *= rot;
  return out;
}

}  // namespace detail

// Multi-restart minimization of uncertainty_sum over normalized coefficient
// vectors on [n_min, n_max]. Restart 0 is seeded at the coherent state,
// restart 1 at the cat state, the rest at Haar-random states; deterministic
// under config.optimizer.seed.
inline MinimizationReport minimize_uncertainty_sum(const ExperimentConfig& config) {
  const int n_min = config.n_min;
  const int n_max = config.n_max;
  const OptimizerConfig& opt = config.optimizer;
  if (opt.restarts < 1) throw DomainError("minimize_uncertainty_sum: need at least one restart");
  if (n_min > n_max) throw BadRangeError("minimize_uncertainty_sum: n_min > n_max");

  detail::SumObjective objective(n_min, n_max);
  MinimizationReport report;
  report.method = "projected gradient (central finite differences, backtracking line search, "
                  "norm projection after every step)";

  const FourierState coherent = coherent_state({0.0, 0.0, 1.0}, n_min, n_max);
  const FourierState cat = cat_state({0.0, 0.0, 1.0}, 0.0, n_min, n_max);
  report.coherent_value = uncertainty_sum(coherent);
  report.cat_value = uncertainty_sum(cat);

  double best = kInfinity;
  std::vector<double> best_x;
  for (int r = 0; r < opt.restarts; ++r) {
    GaussianRng rng(opt.seed + static_cast<std::uint64_t>(r));
    RestartResult rr;
    rr.index = r;
    std::vector<double> x0;
    if (r == 0) {
      rr.seed_kind = "coherent";
      x0 = detail::SumObjective::to_vector(coherent);
    } else if (r == 1) {
      rr.seed_kind = "cat";
      x0 = detail::SumObjective::to_vector(cat);
    } else {
      rr.seed_kind = "random";
      x0 = detail::SumObjective::to_vector(random_fourier_state(rng, n_min, n_max));
    }
    rr.start_value = objective(x0);
    detail::DescentOutcome outcome =
        detail::descend(objective, std::move(x0), rng, opt.max_iters, opt.step_tol);
    rr.final_value = outcome.value;
    rr.iterations = outcome.iterations;
    rr.converged = outcome.converged;
    if (!rr.converged) report.non_convergence = true;
    if (outcome.value < best) {
      best = outcome.value;
      best_x = std::move(outcome.x);
    }
    report.restarts.push_back(rr);
  }

  report.best_value = best;
  report.below_one = best < 1.0;
  report.best_state = detail::fix_gauge(objective.to_state(best_x));

  report.overlap_cat_canonical = std::norm(inner_product(report.best_state, cat));
  const double j_mean = j_moments(report.best_state).mean;
  const double l_match = std::clamp(std::round(j_mean), static_cast<double>(n_min),
                                    static_cast<double>(n_max));
  double matched = 0.0;
  for (int ia = 0; ia < 96; ++ia) {
    const double alpha = kTwoPi * static_cast<double>(ia) / 96.0;
    for (int ip = 0; ip < 24; ++ip) {
      const double phase = kTwoPi * static_cast<double>(ip) / 24.0;
      const FourierState candidate = detail::raw_cat_profile(l_match, alpha, phase, n_min, n_max);
      matched = std::max(matched, std::norm(inner_product(report.best_state, candidate)));
    }
  }
  report.overlap_cat_matched = matched;
  return report;
}

}  // namespace qcircle
