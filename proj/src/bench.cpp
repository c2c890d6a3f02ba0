#include "fsg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fsg/conjugacy.hpp"
#include "fsg/generators.hpp"
#include "fsg/power.hpp"

namespace fsg {

namespace {

using Clock = std::chrono::steady_clock;

// One timed call; the returned flag only keeps the work observable.
using Instance = std::function<bool(Rng&)>;

Instance make_instance(const BenchConfig& c, std::size_t n, Rng& gen) {
  const int r = c.rank;
  const int d = c.degree;
  const Mode mode = c.mode;
  auto bound = [&](std::uint64_t total, int exponent, std::uint64_t factor) -> std::optional<std::uint64_t> {
    if (mode == Mode::deterministic) return std::nullopt;
    return cube_bound_for(total, c.cube_exponent.value_or(exponent), factor);
  };

  switch (c.problem) {
    case Problem::wp: {
      Word w;
      if (c.hard_instances) {
        const Word core = nested_commutator(gen, r, d, 2);
        const std::size_t side = n > core.size() ? (n - core.size()) / 2 : 0;
        const Word z = random_reduced_word(gen, r, side);
        w = z * core * z.inverse();
      } else {
        w = random_reduced_word(gen, r, n);
      }
      const auto b = bound(std::max<std::size_t>(w.size(), 1), 3, 1);
      return [w, r, d, mode, b](Rng& rng) { return word_problem(w, r, d, mode, &rng, b); };
    }
    case Problem::pow: {
      const Word v = random_reduced_word(gen, r, std::max<std::size_t>(n / 3, 1));
      Word u = power(v, 2);
      if (c.hard_instances) u = u * commutator(Word{1}, Word{2});
      const auto b = bound(u.size() + v.size(), 3, 9);
      return [u, v, r, d, mode, b](Rng& rng) {
        return power_solve(u, v, r, d, {mode, &rng, b}).found();
      };
    }
    case Problem::conj: {
      const Word x = random_reduced_word(gen, r, std::max<std::size_t>(n / 4, 1));
      const Word z = random_reduced_word(gen, r, n / 4);
      const Word core = c.hard_instances ? x * commutator(Word{1}, Word{2}) : x;
      const Word y = z * core * z.inverse();
      const auto b = bound(x.size() + y.size(), 6, 25);
      const bool prefilter = c.abelian_prefilter;
      return [x, y, r, d, mode, b, prefilter](Rng& rng) {
        ConjugacyOptions o;
        o.mode = mode;
        o.rng = &rng;
        o.cube_bound = b;
        o.witness = false;
        o.abelian_prefilter = prefilter;
        return conjugacy_solve(x, y, r, d, o).conjugate;
      };
    }
  }
  throw std::invalid_argument("unknown problem");
}

double time_instance(const Instance& run, Rng& rng, double min_ms) {
  int reps = 0;
  volatile bool sink = false;
  const auto start = Clock::now();
  double elapsed = 0;
  do {
    sink = run(rng);
    ++reps;
    elapsed = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  } while (elapsed < min_ms);
  (void)sink;
  return elapsed / reps;
}

}  // namespace

Problem problem_from_string(const std::string& name) {
  if (name == "wp") return Problem::wp;
  if (name == "pow") return Problem::pow;
  if (name == "conj") return Problem::conj;
  throw std::invalid_argument("unknown problem '" + name + "' (wp, pow, conj)");
}

std::string to_string(Problem p) {
  switch (p) {
    case Problem::wp: return "wp";
    case Problem::pow: return "pow";
    case Problem::conj: return "conj";
  }
  return "?";
}

double fitted_exponent(std::span<const std::size_t> sizes, std::span<const double> times) {
  const std::size_t k = std::min(sizes.size(), times.size());
  if (k < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = std::log2(static_cast<double>(sizes[i]));
    const double y = std::log2(std::max(times[i], 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!std::is_sorted(config.sizes.begin(), config.sizes.end()))
    throw std::invalid_argument("sizes must be ascending");
  BenchReport report;
  std::vector<double> medians;
  for (std::size_t n : config.sizes) {
    Rng gen(config.seed ^ (0x9e3779b97f4a7c15ull * (n + 1)));
    Rng rng(gen());
    std::vector<double> times;
    for (int t = 0; t < config.trials; ++t) {
      const Instance run = make_instance(config, n, gen);
      times.push_back(time_instance(run, rng, config.min_instance_ms));
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    BenchRow row{n, times[times.size() / 2], std::nullopt};
    if (!medians.empty()) row.doubling_log2 = std::log2(row.median_ms / medians.back());
    medians.push_back(row.median_ms);
    report.rows.push_back(row);
  }
  report.fitted_exponent = fitted_exponent(config.sizes, medians);
  return report;
}

}  // namespace fsg
