#pragma once

#include <cstddef>
#include <vector>

#include "qcircle/common.hpp"

namespace qcircle {

// State of a particle on the circle in the angular-momentum representation:
// normalized amplitudes c_n on the integer lattice n in [n_min, n_max].
// J is diagonal here; U = exp(i phi) acts as the lattice shift n -> n+1.
struct FourierState {
  int n_min = 0;
  int n_max = 0;
  std::vector<Complex> coeffs;  // coeffs[i] = c_{n_min + i}

  int size() const { return n_max - n_min + 1; }
  int n_at(std::size_t i) const { return n_min + static_cast<int>(i); }

  // c_n, zero outside the lattice.
  Complex coeff(int n) const {
    if (n < n_min || n > n_max) return {0.0, 0.0};
    return coeffs[static_cast<std::size_t>(n - n_min)];
  }
};

inline FourierState eigenstate(int n, int n_min, int n_max) {
  if (n_min > n_max) throw BadRangeError("eigenstate: n_min > n_max");
  if (n < n_min || n > n_max) throw DomainError("eigenstate: n outside lattice");
  FourierState s{n_min, n_max, std::vector<Complex>(static_cast<std::size_t>(n_max - n_min + 1))};
  s.coeffs[static_cast<std::size_t>(n - n_min)] = 1.0;
  return s;
}

inline double norm_squared(const FourierState& s) {
  double acc = 0.0;
  for (const Complex& c : s.coeffs) acc += std::norm(c);
  return acc;
}

inline bool is_normalized(const FourierState& s, double tol = kNormTol) {
  return std::abs(norm_squared(s) - 1.0) <= tol;
}

// Global positive rescale to unit norm; amplitude directions unchanged.
inline FourierState normalize(const FourierState& s) {
  double nrm = std::sqrt(norm_squared(s));
  if (nrm < kZeroNormFloor) throw ZeroNormError("normalize: state has (near-)zero norm");
  FourierState out = s;
  for (Complex& c : out.coeffs) c /= nrm;
  return out;
}

// <a|b> = sum_n conj(a_n) b_n over the overlapping lattice range.
inline Complex inner_product(const FourierState& a, const FourierState& b) {
  int lo = std::max(a.n_min, b.n_min);
  int hi = std::min(a.n_max, b.n_max);
  Complex acc{0.0, 0.0};
  for (int n = lo; n <= hi; ++n) acc += std::conj(a.coeff(n)) * b.coeff(n);
  return acc;
}

// <U^k> = sum_n conj(c_{n+k}) c_n. Independent of any integration origin by
// construction (U^k shifts the lattice by k). The lambda parameter mirrors
// the packet-side signature and is ignored.
inline Complex expectation_u_power(const FourierState& s, int k, double /*lambda*/ = 0.0) {
  if (k <= 0) throw DomainError("expectation_u_power: k must be a positive integer");
  Complex acc{0.0, 0.0};
  for (int n = s.n_min; n + k <= s.n_max; ++n) acc += std::conj(s.coeff(n + k)) * s.coeff(n);
  return acc;
}

struct JMoments {
  double mean = 0.0;
  double second_moment = 0.0;
};

inline JMoments j_moments(const FourierState& s) {
  JMoments m;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    double p = std::norm(s.coeffs[i]);
    double n = static_cast<double>(s.n_at(i));
    m.mean += n * p;
    m.second_moment += n * n * p;
  }
  return m;
}

struct PhiMoments {
  double mean = 0.0;    // <phi>_lambda, integration window [lambda, lambda+2pi)
  double second = 0.0;  // <phi^2>_lambda
};

// Exact window moments of the position density |f(phi)|^2 with
// f = sum_n c_n e^{i n phi}. Uses the autocorrelation G_k = sum_m c_{m+k} conj(c_m)
// (so |f|^2 = sum_k G_k e^{i k phi}) and closed-form integrals of
// phi e^{i k phi} and phi^2 e^{i k phi} over [lambda, lambda+2pi):
//
//   <phi>   = (lambda + pi) + sum_{k!=0} G_k e^{i k lambda} / (i k)
//   <phi^2> = lambda^2 + 2 pi lambda + 4 pi^2 / 3
//             + sum_{k!=0} G_k e^{i k lambda} [ (2 lambda + 2 pi)/(i k) + 2/k^2 ]
inline PhiMoments phi_window_moments(const FourierState& s, double lambda) {
  const std::size_t len = s.coeffs.size();
  PhiMoments out;
  out.mean = lambda + kPi;
  out.second = lambda * lambda + kTwoPi * lambda + 4.0 * kPi * kPi / 3.0;
  for (std::size_t k = 1; k < len; ++k) {
    Complex g{0.0, 0.0};
    for (std::size_t m = 0; m + k < len; ++m) g += s.coeffs[m + k] * std::conj(s.coeffs[m]);
    const Complex ik{0.0, static_cast<double>(k)};
    const Complex phase = std::polar(1.0, static_cast<double>(k) * lambda);
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    // k and -k terms are conjugate; fold them into twice the real part.
    out.mean += 2.0 * std::real(g * phase / ik);
    out.second += 2.0 * std::real(g * phase * ((2.0 * lambda + kTwoPi) / ik + 2.0 / k2));
  }
  return out;
}

// f(phi) = sum_n c_n e^{i n phi}; |f|^2 is the position density w.r.t. dphi/2pi.
inline Complex evaluate_wavefunction(const FourierState& s, double phi) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    acc += s.coeffs[i] * std::polar(1.0, static_cast<double>(s.n_at(i)) * phi);
  return acc;
}

}  // namespace qcircle
