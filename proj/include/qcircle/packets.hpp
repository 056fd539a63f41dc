#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qcircle/common.hpp"
#include "qcircle/fourier_state.hpp"

namespace qcircle {

// One constant-amplitude arc of a 2pi-periodic wavefunction. Endpoints are
// kept exactly as the caller specified them (they may be negative or exceed
// 2pi); reduction modulo 2pi happens only at evaluation time.
struct AngularSegment {
  double start = 0.0;
  double end = 0.0;
  Complex amplitude{0.0, 0.0};
};

// 2pi-periodic position wavefunction f(phi) given as finitely many
// constant-amplitude arcs. Normalization convention:
//   (1/2pi) Int |f|^2 dphi = sum_k |a_k|^2 (end_k - start_k) / 2pi = 1.
struct PiecewisePacket {
  std::vector<AngularSegment> segments;
};

// Piecewise-constant wavefunction on the real line (measure dx, not dx/2pi).
struct LineSegment {
  double x_start = 0.0;
  double x_end = 0.0;
  double amplitude = 0.0;
};

struct LineBoxPacket {
  std::vector<LineSegment> segments;
};

// -- validation ---------------------------------------------------------------

// Segments must be non-overlapping modulo 2pi with total measure <= 2pi.
inline void validate_packet(const PiecewisePacket& p) {
  constexpr double slack = 1e-12;
  double total = 0.0;
  std::vector<std::pair<double, double>> arcs;  // reduced to [0, 2pi)
  for (const AngularSegment& seg : p.segments) {
    double w = seg.end - seg.start;
    if (!(w > 0.0)) throw DomainError("packet segment must have end > start");
    if (w > kTwoPi + slack) throw DomainError("packet segment wider than 2pi");
    total += w;
    double a = wrap_angle(seg.start);
    double b = a + w;
    if (b <= kTwoPi + slack) {
      arcs.emplace_back(a, std::min(b, kTwoPi));
    } else {  // wraps the seam
      arcs.emplace_back(a, kTwoPi);
      arcs.emplace_back(0.0, b - kTwoPi);
    }
  }
  if (total > kTwoPi + slack) throw DomainError("packet segments cover more than 2pi");
  std::sort(arcs.begin(), arcs.end());
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    if (arcs[i].first < arcs[i - 1].second - slack)
      throw DomainError("packet segments overlap modulo 2pi");
  }
}

inline void validate_line_packet(const LineBoxPacket& p) {
  constexpr double slack = 1e-12;
  std::vector<std::pair<double, double>> spans;
  for (const LineSegment& seg : p.segments) {
    if (!(seg.x_end > seg.x_start)) throw DomainError("line segment must have x_end > x_start");
    spans.emplace_back(seg.x_start, seg.x_end);
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first < spans[i - 1].second - slack)
      throw DomainError("line segments overlap");
  }
}

// -- norms --------------------------------------------------------------------

inline double norm_squared(const PiecewisePacket& p) {
  double acc = 0.0;
  for (const AngularSegment& seg : p.segments)
    acc += std::norm(seg.amplitude) * (seg.end - seg.start);
  return acc / kTwoPi;
}

inline double norm_squared(const LineBoxPacket& p) {
  double acc = 0.0;
  for (const LineSegment& seg : p.segments)
    acc += seg.amplitude * seg.amplitude * (seg.x_end - seg.x_start);
  return acc;
}

inline bool is_normalized(const PiecewisePacket& p, double tol = kNormTol) {
  return std::abs(norm_squared(p) - 1.0) <= tol;
}

inline bool is_normalized(const LineBoxPacket& p, double tol = kNormTol) {
  return std::abs(norm_squared(p) - 1.0) <= tol;
}

inline PiecewisePacket normalize(const PiecewisePacket& p) {
  validate_packet(p);
  double nrm = std::sqrt(norm_squared(p));
  if (nrm < kZeroNormFloor) throw ZeroNormError("normalize: packet has (near-)zero norm");
  PiecewisePacket out = p;
  for (AngularSegment& seg : out.segments) seg.amplitude /= nrm;
  return out;
}

inline LineBoxPacket normalize(const LineBoxPacket& p) {
  validate_line_packet(p);
  double nrm = std::sqrt(norm_squared(p));
  if (nrm < kZeroNormFloor) throw ZeroNormError("normalize: packet has (near-)zero norm");
  LineBoxPacket out = p;
  for (LineSegment& seg : out.segments) seg.amplitude /= nrm;
  return out;
}

// -- integration window [lambda, lambda+2pi) ----------------------------------

// One constant-density piece of |f|^2 expressed in window coordinates.
struct WindowPiece {
  double a = 0.0;       // piece start, in [lambda, lambda+2pi)
  double b = 0.0;       // piece end
  double density = 0.0; // |amplitude|^2
};

// Map every segment into the window [lambda, lambda+2pi): each point phi goes
// to its unique representative lambda + mod(phi - lambda, 2pi). A contiguous
// arc maps to at most two contiguous pieces (split at the window seam).
inline std::vector<WindowPiece> window_pieces(const PiecewisePacket& p, double lambda) {
  std::vector<WindowPiece> pieces;
  pieces.reserve(2 * p.segments.size());
  for (const AngularSegment& seg : p.segments) {
    const double w = seg.end - seg.start;
    const double d = std::norm(seg.amplitude);
    double u = std::fmod(seg.start - lambda, kTwoPi);
    if (u < 0.0) u += kTwoPi;
    if (u + w <= kTwoPi) {
      pieces.push_back({lambda + u, lambda + u + w, d});
    } else {
      pieces.push_back({lambda + u, lambda + kTwoPi, d});
      pieces.push_back({lambda, lambda + (u + w - kTwoPi), d});
    }
  }
  return pieces;
}

// <U^k>_lambda = (1/2pi) Int_lambda^{2pi+lambda} e^{i k phi} |f|^2 dphi,
// exact per piece: Int_a^b e^{i k phi} dphi = (e^{i k b} - e^{i k a})/(i k).
// Equals <U^k>_0 for every lambda (the integrand is 2pi-periodic); the window
// is integrated literally so that invariance is observed, not hardwired.
inline Complex expectation_u_power(const PiecewisePacket& p, int k, double lambda = 0.0) {
  if (k <= 0) throw DomainError("expectation_u_power: k must be a positive integer");
  const Complex ik{0.0, static_cast<double>(k)};
  Complex acc{0.0, 0.0};
  for (const WindowPiece& piece : window_pieces(p, lambda)) {
    Complex ea = std::polar(1.0, k * piece.a);
    Complex eb = std::polar(1.0, k * piece.b);
    acc += piece.density * (eb - ea) / ik;
  }
  return acc / kTwoPi;
}

// -- change of representation ---------------------------------------------------

struct FourierImage {
  FourierState state;
  double removed_mass = 0.0;        // Parseval deficit of the raw truncation
  bool truncation_warning = false;  // set when removed_mass > kTailTol
};

// c_n = (1/2pi) Int f(phi) e^{-i n phi} dphi, exact per segment:
//   n = 0:  a_k (end - start) / 2pi
//   n != 0: a_k (e^{-i n start} - e^{-i n end}) / (i n 2pi)
// The truncated state is renormalized when the removed Parseval mass exceeds
// kTailTol (downstream measures require unit norm); the deficit is reported.
inline FourierImage fourier_from_packet(const PiecewisePacket& p, int n_min, int n_max) {
  if (n_min > n_max) throw BadRangeError("fourier_from_packet: n_min > n_max");
  FourierImage out;
  out.state.n_min = n_min;
  out.state.n_max = n_max;
  out.state.coeffs.assign(static_cast<std::size_t>(n_max - n_min + 1), Complex{0.0, 0.0});
  for (int n = n_min; n <= n_max; ++n) {
    Complex c{0.0, 0.0};
    if (n == 0) {
      for (const AngularSegment& seg : p.segments)
        c += seg.amplitude * (seg.end - seg.start);
    } else {
      const Complex in{0.0, static_cast<double>(n)};
      for (const AngularSegment& seg : p.segments) {
        Complex es = std::polar(1.0, -n * seg.start);
        Complex ee = std::polar(1.0, -n * seg.end);
        c += seg.amplitude * (es - ee) / in;
      }
    }
    out.state.coeffs[static_cast<std::size_t>(n - n_min)] = c / kTwoPi;
  }
  double captured = norm_squared(out.state);
  out.removed_mass = 1.0 - captured;
  if (out.removed_mass > kTailTol) {
    out.truncation_warning = true;
    out.state = normalize(out.state);
  }
  return out;
}

}  // namespace qcircle
