#pragma once

#include "qcircle/common.hpp"
#include "qcircle/fourier_state.hpp"
#include "qcircle/packets.hpp"

namespace qcircle {

inline constexpr int kDefaultNMin = -64;
inline constexpr int kDefaultNMax = 64;

// -- line packets -------------------------------------------------------------

// psi(x) = 1/sqrt(L) on (-L/2, L/2).
inline LineBoxPacket box_packet(double L) {
  if (!(L > 0.0)) throw DomainError("box_packet: L must be positive");
  return LineBoxPacket{{{-L / 2.0, L / 2.0, 1.0 / std::sqrt(L)}}};
}

// phi(x) = sqrt(2/L) on (-L/2, -L/4) and (L/4, L/2), zero between.
inline LineBoxPacket split_box_packet(double L) {
  if (!(L > 0.0)) throw DomainError("split_box_packet: L must be positive");
  const double amp = std::sqrt(2.0 / L);
  return LineBoxPacket{{{-L / 2.0, -L / 4.0, amp}, {L / 4.0, L / 2.0, amp}}};
}

// -- circle packets -----------------------------------------------------------

// f(phi) = sqrt(2pi/eps) on [0, eps], taken modulo 2pi.
inline PiecewisePacket char_packet(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < kTwoPi))
    throw DomainError("char_packet: epsilon must lie in (0, 2pi)");
  return PiecewisePacket{{{0.0, epsilon, Complex{std::sqrt(kTwoPi / epsilon), 0.0}}}};
}

// Full-circle constant packet, f = 1. The n = 0 momentum eigenstate in
// position form; not reachable through char_packet (open domain).
inline PiecewisePacket uniform_packet() {
  return PiecewisePacket{{{0.0, kTwoPi, Complex{1.0, 0.0}}}};
}

// -- lattice-Gaussian family ----------------------------------------------------

// Parameters of the coherent/squeezed family: angular-momentum centroid l,
// angular centroid alpha, width parameter s (s = 1 is the coherent state).
struct CoherentParams {
  double l = 0.0;
  double alpha = 0.0;
  double s = 1.0;
};

namespace detail {

inline void check_family_tail(const FourierState& s) {
  const double edge = std::norm(s.coeffs.front()) + std::norm(s.coeffs.back());
  if (!(edge < kTailTol))
    throw TruncationError("state family: lattice edge mass exceeds tail tolerance; widen [n_min, n_max]");
}

}  // namespace detail

// c_n proportional to e^{-s (n-l)^2 / 2} e^{-i n alpha}, normalized. The width
// parameter scales the lattice Gaussian only; s = 1 recovers the coherent
// state. alpha is reduced to [0, 2pi).
inline FourierState squeezed_state(const CoherentParams& params,
                                   int n_min = kDefaultNMin, int n_max = kDefaultNMax) {
  if (!(params.s > 0.0)) throw DomainError("squeezed_state: s must be positive");
  if (n_min > n_max) throw BadRangeError("squeezed_state: n_min > n_max");
  const double alpha = wrap_angle(params.alpha);
  FourierState s{n_min, n_max, std::vector<Complex>(static_cast<std::size_t>(n_max - n_min + 1))};
  for (int n = n_min; n <= n_max; ++n) {
    const double d = static_cast<double>(n) - params.l;
    const double mag = std::exp(-params.s * d * d / 2.0);
    s.coeffs[static_cast<std::size_t>(n - n_min)] = mag * std::polar(1.0, -n * alpha);
  }
  s = normalize(s);
  detail::check_family_tail(s);
  return s;
}

// Coherent state on the circle: the s = 1 lattice Gaussian. Peak coefficient
// at n = round(l); |<U^2>| = e^{-1} for every (l, alpha) by the theta-sum
// shift identity, so its angle uncertainty is exactly 1/2.
inline FourierState coherent_state(const CoherentParams& params,
                                   int n_min = kDefaultNMin, int n_max = kDefaultNMax) {
  CoherentParams p = params;
  p.s = 1.0;
  return squeezed_state(p, n_min, n_max);
}

// Normalized superposition coherent(l, alpha) + e^{i phase} coherent(l, alpha+pi).
// The antipodal partner is obtained by the exact parity factor (-1)^n, so for
// phase = 0, l = 0 the odd coefficients vanish identically (machine zeros).
inline FourierState cat_state(const CoherentParams& params, double phase = 0.0,
                              int n_min = kDefaultNMin, int n_max = kDefaultNMax) {
  FourierState a = coherent_state(params, n_min, n_max);
  const Complex w = std::polar(1.0, phase);
  FourierState out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const double parity = (out.n_at(i) % 2 == 0) ? 1.0 : -1.0;
    out.coeffs[i] = a.coeffs[i] * (1.0 + w * parity);
  }
  out = normalize(out);
  detail::check_family_tail(out);
  return out;
}

}  // namespace qcircle
