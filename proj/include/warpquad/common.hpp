#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace warpquad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Thrown on contract violations (dimension mismatches, domain errors, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot complete (factorization failure,
/// degenerate weights, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 step; used to derive independent seeds from (seed, stream) pairs.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// log(exp(a) - exp(b)) for a >= b; returns -inf when a == b.
inline double log_sub_exp(double a, double b) {
  if (b == -kInf) return a;
  if (a < b) throw NumericalError("log_sub_exp: negative difference");
  if (a == b) return -kInf;
  return a + std::log1p(-std::exp(b - a));
}

/// Streaming log-sum-exp accumulator; add() terms in any order, value() at the end.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == -kInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      if (max_ != -kInf) sum_ *= std::exp(max_ - log_term);
      sum_ += 1.0;
      max_ = log_term;
    }
  }
  void add_scaled(double log_term, double count) {
    if (count <= 0.0) return;
    add(log_term + std::log(count));
  }
  bool empty() const { return max_ == -kInf; }
  double value() const { return empty() ? -kInf : max_ + std::log(sum_); }

 private:
  double max_ = -kInf;
  double sum_ = 0.0;
};

inline double log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Quantum used to snap observed log-f values onto a dyadic grid. Adding any
/// multiple of the quantum to all observations then cancels exactly in the
/// max-zero shift, so constant offsets of log f leave the modeled data
/// bit-identical.
inline constexpr double kLogFQuantum = 1.0 / 67108864.0;  // 2^-26

inline double quantize_log_f(double log_f) {
  if (!std::isfinite(log_f)) return log_f;
  return std::nearbyint(log_f / kLogFQuantum) * kLogFQuantum;
}

}  // namespace warpquad
