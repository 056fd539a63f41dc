#pragma once

#include <cstdint>
#include <random>

#include "qcircle/common.hpp"
#include "qcircle/fourier_state.hpp"

namespace qcircle {

// Deterministic Gaussian source. mt19937_64 has a standard-specified output
// sequence, and Box-Muller avoids std::normal_distribution, whose stream is
// implementation-defined; together a seed pins the byte-exact run.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // (0, 1]
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = kTwoPi * v;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Haar-random pure state on the truncated lattice: i.i.d. complex Gaussian
// amplitudes, then projected to the unit sphere.
inline FourierState random_fourier_state(GaussianRng& rng, int n_min, int n_max) {
  if (n_min > n_max) throw BadRangeError("random_fourier_state: n_min > n_max");
  FourierState s{n_min, n_max, std::vector<Complex>(static_cast<std::size_t>(n_max - n_min + 1))};
  for (Complex& c : s.coeffs) c = Complex{rng.gaussian(), rng.gaussian()};
  return normalize(s);
}

}  // namespace qcircle
