#pragma once

// Scaling measurements: median wall time per input size, doubling ratios and
// a least-squares exponent fit on log-log axes.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsg/word_problem.hpp"

namespace fsg {

enum class Problem { wp, pow, conj };

Problem problem_from_string(const std::string& name);
std::string to_string(Problem p);

struct BenchConfig {
  Problem problem = Problem::wp;
  Mode mode = Mode::deterministic;
  int rank = 2;
  int degree = 2;
  std::vector<std::size_t> sizes;
  int trials = 5;
  std::uint64_t seed = 1;
  /// Replaces the exponent of the default Monte Carlo cube bound.
  std::optional<int> cube_exponent;
  /// Slow-path instances: wp times known-trivial words z·c·z⁻¹, pow times
  /// non-powers v²·c, conj times non-conjugate pairs with equal abelianizations
  /// (every split of x is tried). c is a commutator.
  bool hard_instances = false;
  /// conj only: false queries membership for every coset candidate.
  bool abelian_prefilter = true;
  /// Repeat each instance until this much time has passed, then average.
  double min_instance_ms = 20.0;
};

struct BenchRow {
  std::size_t n = 0;
  double median_ms = 0;
  /// log2(time(n) / time(previous n)), on the row of the larger size.
  std::optional<double> doubling_log2;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double fitted_exponent = 0;
};

/// Instances for size n are built from a generator seeded with (seed, n),
/// so reports are reproducible.
BenchReport run_bench(const BenchConfig& config);

/// Least-squares slope of log t against log n.
double fitted_exponent(std::span<const std::size_t> sizes, std::span<const double> times);

}  // namespace fsg
