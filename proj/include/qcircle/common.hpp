#pragma once

#include <complex>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcircle {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Default tolerances. Averages use the measure dphi/2pi throughout; the
// Fourier basis e^{i n phi} has unit norm in that measure.
inline constexpr double kNormTol = 1e-12;        // unit-norm slack
inline constexpr double kTailTol = 1e-12;        // truncation-adequacy guard
inline constexpr double kU2ZeroTol = 1e-14;      // |<U^2>| below this counts as zero
inline constexpr double kZeroNormFloor = 1e-300; // normalize() refuses below this
inline constexpr double kConsistencyTol = 1e-9;  // dual-route identity check

struct ZeroNormError : std::runtime_error {
  explicit ZeroNormError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

struct BadRangeError : std::invalid_argument {
  explicit BadRangeError(const std::string& what) : std::invalid_argument(what) {}
};

struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Two algebraically equal routes disagreed beyond kConsistencyTol. Signals a
// convention bug in this library, not a user error.
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Reduce an angle to [0, 2pi).
inline double wrap_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace qcircle
