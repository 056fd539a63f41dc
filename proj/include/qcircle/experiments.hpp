#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcircle/common.hpp"
#include "qcircle/families.hpp"
#include "qcircle/fourier_state.hpp"
#include "qcircle/measures.hpp"
#include "qcircle/packets.hpp"

namespace qcircle {

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 400;
  double step_tol = 1e-10;
  std::uint64_t seed = 42;
};

struct ExperimentConfig {
  std::vector<double> lambda_grid;
  std::vector<double> epsilon_grid;
  std::vector<double> l_grid;
  std::vector<double> time_grid;
  int n_min = -8;
  int n_max = 8;
  OptimizerConfig optimizer;
  std::string output_path;
};

// -- lambda-origin sweep --------------------------------------------------------

struct LambdaSweepRow {
  double lambda = 0.0;
  double circ_variance = 0.0;
  double difference = 0.0;  // Delta^2_lambda - Delta^2_0
  double kr_angle = 0.0;    // constant across rows: the measure is origin-free
};

inline std::vector<LambdaSweepRow> lambda_sweep(const PiecewisePacket& packet,
                                                const std::vector<double>& lambda_grid) {
  std::vector<LambdaSweepRow> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    LambdaSweepRow row;
    row.lambda = lambda;
    row.circ_variance = circular_variance(packet, lambda);
    row.difference = circular_variance_difference(packet, lambda);
    row.kr_angle = kr_angle_uncertainty(packet, lambda);
    rows.push_back(row);
  }
  return rows;
}

// -- free evolution under H = J^2/2 ----------------------------------------------

// Recorded quantities along a free-evolution trajectory. The phase estimate
// arg<U> is undefined when |<U>| vanishes; the windowed mean (lambda = 0
// window) is emitted alongside it so the two conventions can be compared.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::optional<double>> phase_estimate;  // arg<U> in [0, 2pi)
  std::vector<double> u1_magnitude;                   // |<U>|
  std::vector<double> windowed_mean;                  // <phi>_0
  std::vector<UncertaintyReport> reports;
};

// c_n(t) = c_n e^{-i n^2 t / 2} (hbar = 1, unit moment of inertia). Every state
// revives exactly at t = 4pi since e^{-i n^2 2pi} = 1 for all integers n.
inline FourierState evolve_free(const FourierState& s, double t) {
  FourierState out = s;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const double n = static_cast<double>(out.n_at(i));
    out.coeffs[i] *= std::polar(1.0, -n * n * t / 2.0);
  }
  return out;
}

inline Trajectory free_evolution(const FourierState& state, const std::vector<double>& time_grid) {
  Trajectory traj;
  traj.times = time_grid;
  traj.phase_estimate.reserve(time_grid.size());
  traj.u1_magnitude.reserve(time_grid.size());
  traj.windowed_mean.reserve(time_grid.size());
  traj.reports.reserve(time_grid.size());
  for (double t : time_grid) {
    const FourierState st = evolve_free(state, t);
    const Complex u1 = expectation_u_power(st, 1);
    const double mag = std::abs(u1);
    traj.u1_magnitude.push_back(mag);
    if (mag > kU2ZeroTol) {
      traj.phase_estimate.push_back(wrap_angle(std::arg(u1)));
    } else {
      traj.phase_estimate.push_back(std::nullopt);
    }
    traj.windowed_mean.push_back(phi_window_moments(st, 0.0).mean);
    traj.reports.push_back(make_report(st));
  }
  return traj;
}

// -- real-line demo ----------------------------------------------------------------

struct LineDemoPoint {
  double sigma2 = 0.0;
  double heisenberg_sum = 0.0;
};

struct LineDemoReport {
  double L = 0.0;
  double box_variance = 0.0;        // L^2/12
  double split_box_variance = 0.0;  // (7/4) L^2/12
  double ratio = 0.0;               // always 7/4
  std::vector<LineDemoPoint> gaussian_curve;  // sigma^2 + 1/(4 sigma^2), min 1 at 1/2
};

inline LineDemoReport line_demo(double L) {
  if (!(L > 0.0)) throw DomainError("line_demo: L must be positive");
  LineDemoReport r;
  r.L = L;
  r.box_variance = line_position_variance(box_packet(L));
  r.split_box_variance = line_position_variance(split_box_packet(L));
  r.ratio = r.split_box_variance / r.box_variance;
  for (int k = 1; k <= 16; ++k) {  // 0.125 .. 2.0; contains the minimizer 1/2
    const double sigma2 = 0.125 * static_cast<double>(k);
    r.gaussian_curve.push_back({sigma2, line_heisenberg_sum(sigma2)});
  }
  return r;
}

}  // namespace qcircle
