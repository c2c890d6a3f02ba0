#pragma once

// Power problem u = v^k in S_{r,d}, and membership in a cyclic subgroup ⟨y⟩.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "fsg/word_problem.hpp"

namespace fsg {

struct PowerResult {
  std::optional<std::int64_t> k;  // nullopt means Fail

  bool found() const { return k.has_value(); }
  static PowerResult fail() { return {}; }
  static PowerResult exponent(std::int64_t value) { return {value}; }
  bool operator==(const PowerResult&) const = default;
};

struct SolveOptions {
  Mode mode = Mode::deterministic;
  Rng* rng = nullptr;
  /// Anchor cube bound for Monte Carlo chains; each solver documents its default.
  std::optional<std::uint64_t> cube_bound;
};

/// Largest s <= cap with w = 1 in S_{r,s}. The empty word reports cap.
int triviality_depth(const Word& w, int rank, int cap, const SolveOptions& options = {});

/// k with u = v^k in S_{r,d}, or Fail. Monte Carlo chains default to the
/// cube bound 9(|u|+|v|)^3.
PowerResult power_solve(const Word& u, const Word& v, int rank, int degree, const SolveOptions& options = {});

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// g ∈ ⟨y⟩ in S_{r,d}, via power_solve, memoized on the reduced word g.
class CyclicMembership {
 public:
  CyclicMembership(Word generator, int rank, int degree, SolveOptions options = {});

  bool contains(const Word& g);
  std::optional<std::int64_t> exponent(const Word& g);

  const Word& generator() const { return generator_; }
  int degree() const { return degree_; }
  std::size_t solver_calls() const { return calls_; }

 private:
  Word generator_;
  int rank_;
  int degree_;
  SolveOptions options_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  std::unordered_map<Word, PowerResult, WordHash> memo_;
  std::size_t calls_ = 0;
};

}  // namespace fsg
