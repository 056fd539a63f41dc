#pragma once

#include <sstream>

#include "qcircle/common.hpp"
#include "qcircle/fourier_state.hpp"
#include "qcircle/packets.hpp"

namespace qcircle {

// -- real-line measures ---------------------------------------------------------

// <x^2> - <x>^2 via exact segment antiderivatives of x |psi|^2 and x^2 |psi|^2.
inline double line_position_variance(const LineBoxPacket& p) {
  double m1 = 0.0, m2 = 0.0;
  for (const LineSegment& seg : p.segments) {
    const double d = seg.amplitude * seg.amplitude;
    const double a = seg.x_start, b = seg.x_end;
    m1 += d * (b * b - a * a) / 2.0;
    m2 += d * (b * b * b - a * a * a) / 3.0;
  }
  return m2 - m1 * m1;
}

// Gaussian line state of position variance sigma^2 (hbar = 1):
// Delta^2 x + Delta^2 p = sigma^2 + 1/(4 sigma^2), minimum 1 at sigma^2 = 1/2.
inline double line_heisenberg_sum(double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("line_heisenberg_sum: sigma^2 must be positive");
  return sigma2 + 1.0 / (4.0 * sigma2);
}

// -- circular variance (origin-dependent) ----------------------------------------

// Delta^2_lambda phi = <phi^2>_lambda - <phi>_lambda^2 with integration window
// [lambda, 2pi+lambda) and measure dphi/2pi; exact per-piece antiderivatives.
inline double circular_variance(const PiecewisePacket& p, double lambda) {
  double m1 = 0.0, m2 = 0.0;
  for (const WindowPiece& w : window_pieces(p, lambda)) {
    m1 += w.density * (w.b * w.b - w.a * w.a) / 2.0;
    m2 += w.density * (w.b * w.b * w.b - w.a * w.a * w.a) / 3.0;
  }
  m1 /= kTwoPi;
  m2 /= kTwoPi;
  return m2 - m1 * m1;
}

// Same window variance evaluated from the angular-momentum side (exact trig
// moments of the reconstructed density; no quadrature).
inline double circular_variance(const FourierState& s, double lambda) {
  PhiMoments m = phi_window_moments(s, lambda);
  return m.second - m.mean * m.mean;
}

inline double circular_mean(const PiecewisePacket& p, double lambda) {
  double m1 = 0.0;
  for (const WindowPiece& w : window_pieces(p, lambda))
    m1 += w.density * (w.b * w.b - w.a * w.a) / 2.0;
  return m1 / kTwoPi;
}

// Delta^2_lambda phi - Delta^2_0 phi, evaluated two ways:
//   (a) directly, as the difference of the two window variances;
//   (b) as the window integral
//         2 Int_0^lambda (phi + pi - <phi>_0) |f|^2 dphi
//           - ( Int_0^lambda |f|^2 dphi )^2
//       with plain dphi integrals (the 1/2pi of the moment convention cancels
//       into the prefactors) and phi the [0,2pi)-window representative.
// The two must agree; disagreement beyond kConsistencyTol means this library
// broke a convention somewhere and is reported as ConsistencyError.
inline double circular_variance_difference(const PiecewisePacket& p, double lambda) {
  if (!(lambda >= 0.0 && lambda < kTwoPi))
    throw DomainError("circular_variance_difference: lambda must lie in [0, 2pi)");
  const double direct = circular_variance(p, lambda) - circular_variance(p, 0.0);

  const double mean0 = circular_mean(p, 0.0);
  double i0 = 0.0, i1 = 0.0;  // Int_0^lambda |f|^2 and Int_0^lambda (phi + pi - <phi>_0)|f|^2
  for (const WindowPiece& w : window_pieces(p, 0.0)) {
    const double a = w.a;
    const double b = std::min(w.b, lambda);
    if (b <= a) continue;
    i0 += w.density * (b - a);
    i1 += w.density * ((b * b - a * a) / 2.0 + (kPi - mean0) * (b - a));
  }
  const double rhs = 2.0 * i1 - i0 * i0;

  if (std::abs(direct - rhs) > kConsistencyTol) {
    std::ostringstream msg;
    msg << "circular_variance_difference: window-difference identity violated "
        << "(direct=" << direct << ", integral form=" << rhs << ", lambda=" << lambda << ")";
    throw ConsistencyError(msg.str());
  }
  return direct;
}

// Closed form of the variance difference for the characteristic-function
// packet of width epsilon:
//   0                                                     for epsilon <= lambda
//   (2pi/eps) lambda [ (1 - 2pi/eps) lambda + 2 (pi - eps/2) ]  otherwise.
inline double char_packet_difference_closed_form(double epsilon, double lambda) {
  if (!(epsilon > 0.0 && epsilon < kTwoPi))
    throw DomainError("char_packet_difference_closed_form: epsilon must lie in (0, 2pi)");
  if (!(lambda >= 0.0 && lambda < kTwoPi))
    throw DomainError("char_packet_difference_closed_form: lambda must lie in [0, 2pi)");
  if (epsilon <= lambda) return 0.0;
  const double r = kTwoPi / epsilon;
  return r * lambda * ((1.0 - r) * lambda + 2.0 * (kPi - epsilon / 2.0));
}

// -- origin-invariant angle uncertainty -------------------------------------------

// Delta^2(phi) = -(1/4) ln |<U^2>|^2 = -(1/2) ln |<U^2>|; +infinity when
// <U^2> vanishes (within kU2ZeroTol). Independent of lambda.
inline double kr_angle_from_magnitude(double u2_magnitude) {
  if (u2_magnitude < kU2ZeroTol) return kInfinity;
  return -0.5 * std::log(u2_magnitude);
}

inline double kr_angle_uncertainty(const FourierState& s, double lambda = 0.0) {
  return kr_angle_from_magnitude(std::abs(expectation_u_power(s, 2, lambda)));
}

inline double kr_angle_uncertainty(const PiecewisePacket& p, double lambda = 0.0) {
  return kr_angle_from_magnitude(std::abs(expectation_u_power(p, 2, lambda)));
}

// -- angular momentum ------------------------------------------------------------

inline double angular_momentum_variance(const FourierState& s) {
  JMoments m = j_moments(s);
  return m.second_moment - m.mean * m.mean;
}

// Left-hand side of the disputed relation: Delta^2(phi) + Delta^2(J).
inline double uncertainty_sum(const FourierState& s) {
  return kr_angle_uncertainty(s) + angular_momentum_variance(s);
}

// -- combined report --------------------------------------------------------------

// All measures evaluated on one state. For piecewise-constant packets the
// angular-momentum variance diverges (the derivative of f is a sum of deltas),
// so packet reports carry j_variance = +infinity.
struct UncertaintyReport {
  double lambda = 0.0;
  double circ_variance = 0.0;   // Delta^2_lambda(phi), origin-dependent
  double kr_angle = 0.0;        // -(1/4) ln |<U^2>|^2, origin-invariant
  double j_variance = 0.0;      // Delta^2(J)
  double sum_kr = 0.0;          // kr_angle + j_variance
  double u2_magnitude = 0.0;    // |<U^2>| in [0, 1]
};

inline UncertaintyReport make_report(const FourierState& s, double lambda = 0.0) {
  UncertaintyReport r;
  r.lambda = lambda;
  r.circ_variance = circular_variance(s, lambda);
  r.u2_magnitude = std::abs(expectation_u_power(s, 2, lambda));
  r.kr_angle = kr_angle_from_magnitude(r.u2_magnitude);
  r.j_variance = angular_momentum_variance(s);
  r.sum_kr = r.kr_angle + r.j_variance;
  return r;
}

inline UncertaintyReport make_report(const PiecewisePacket& p, double lambda = 0.0) {
  UncertaintyReport r;
  r.lambda = lambda;
  r.circ_variance = circular_variance(p, lambda);
  r.u2_magnitude = std::abs(expectation_u_power(p, 2, lambda));
  r.kr_angle = kr_angle_from_magnitude(r.u2_magnitude);
  r.j_variance = kInfinity;
  r.sum_kr = kInfinity;
  return r;
}

}  // namespace qcircle
