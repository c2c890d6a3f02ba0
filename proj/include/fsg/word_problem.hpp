#pragma once

// Distinguisher chains ν_0, ν_1, ... over prefix trees and the word problem
// in S_{r,d}, deterministic (lexicographic flow ranks) or Monte Carlo
// (squared distances to a random anchor point).

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsg/xdigraph.hpp"

namespace fsg {

using Rng = std::mt19937_64;
using Wide = boost::multiprecision::uint256_t;

enum class Mode { deterministic, monte_carlo };

/// Labels on the vertices of a prefix tree (for a single word: on prefix
/// indices 0..|w|). A true distinguisher at depth d gives equal labels
/// exactly to prefixes that are equal in S_{r,d}.
struct Distinguisher {
  std::vector<Label> labels;
  int depth = 0;
};

/// ν_0 ≡ 0.
Distinguisher trivial_distinguisher(std::size_t vertex_count);

/// ν_d from ν_{d-1}: ranks of the prefix flows on Γ_{ν_{d-1}} in lexicographic order.
Distinguisher refine_deterministic(const PrefixTree& tree, const Distinguisher& previous);
Distinguisher refine_deterministic(const Word& w, const Distinguisher& previous);

/// Candidate ν_d: ranks of d²(A, A_v) for a uniform anchor A ∈ [0, cube_bound]^m.
/// Equal flows always get equal labels; distinct flows collide with small probability.
Distinguisher refine_randomized(const PrefixTree& tree, const Distinguisher& previous, Rng& rng,
                                std::uint64_t cube_bound);
Distinguisher refine_randomized(const Word& w, const Distinguisher& previous, Rng& rng,
                                std::uint64_t cube_bound);

/// Anchor point, one coordinate per numbered edge, uniform in [0, cube_bound].
std::vector<std::uint64_t> sample_anchor(Rng& rng, std::size_t edge_count, std::uint64_t cube_bound);

struct Fingerprint {
  std::vector<std::uint64_t> anchor;
  std::vector<Wide> squared_distance;  // per tree vertex, maintained incrementally
  std::uint64_t cube_bound = 0;
};

/// d²(A, A_v) for every tree vertex, starting from Σ a_j² at the root and
/// adding ±2|A_{v,j}| + 1 per tree edge.
Fingerprint fingerprint(const PrefixTree& tree, const EdgeNumbering& numbering, std::vector<std::uint64_t> anchor,
                        std::uint64_t cube_bound);

/// factor · n^exponent; throws GuardError above 2^62.
std::uint64_t cube_bound_for(std::uint64_t n, int exponent, std::uint64_t factor = 1);

struct ChainOptions {
  Mode mode = Mode::deterministic;
  Rng* rng = nullptr;
  std::uint64_t cube_bound = 0;
};

/// Lazily computed distinguisher chain over one prefix tree. The tree must outlive the chain.
class SupportChain {
 public:
  SupportChain(const PrefixTree& tree, ChainOptions options);

  const Distinguisher& at(int depth);
  bool same_element(int depth, Vertex a, Vertex b) { return at(depth).labels[a] == at(depth).labels[b]; }
  const PrefixTree& tree() const { return tree_; }

 private:
  const PrefixTree& tree_;
  ChainOptions options_;
  std::vector<Distinguisher> levels_;
};

/// Largest d with 3^d <= n, i.e. ⌊log_3 n⌋ (0 for n <= 2).
int floor_log3(std::uint64_t n);

/// Inputs longer than this are rejected with GuardError.
inline constexpr std::size_t kMaxWordLength = std::size_t{1} << 20;

/// Is w = 1 in S_{r,d}? Monte Carlo mode never answers false on a trivial word.
/// The default cube bound is |w|^3.
bool word_problem(const Word& w, int rank, int degree, Mode mode = Mode::deterministic, Rng* rng = nullptr,
                  std::optional<std::uint64_t> cube_bound = std::nullopt);

}  // namespace fsg
