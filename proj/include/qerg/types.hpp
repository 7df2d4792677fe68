#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qerg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Guard against d^k blowup in dense replica-space constructions.
inline constexpr std::int64_t kDefaultEntryCap = std::int64_t{1} << 26;

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline void check_entry_cap(std::int64_t rows, std::int64_t cols,
                            std::int64_t cap = kDefaultEntryCap) {
  if (rows <= 0 || cols <= 0 || rows > cap / cols) {
    throw SizeCapError("matrix of " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " entries exceeds the size cap");
  }
}

}  // namespace qerg
