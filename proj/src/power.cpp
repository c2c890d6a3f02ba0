#include "fsg/power.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "fsg/errors.hpp"

namespace fsg {

namespace {

constexpr int kAlways = std::numeric_limits<int>::max();

// Signed traversal counts of the root-to-v tree path, per numbered edge.
std::vector<std::int64_t> path_flow(const PrefixTree& tree, const EdgeNumbering& numbering, Vertex v) {
  std::vector<std::int64_t> flow(numbering.edge_count, 0);
  for (; v != tree.root(); v = tree.parent(v)) {
    const std::int32_t s = numbering.signed_edge[v];
    flow[std::abs(s) - 1] += s > 0 ? 1 : -1;
  }
  return flow;
}

// Largest level <= top at which `v` coincides with the root (levels are monotone).
int trivial_through(SupportChain& chain, Vertex v, int top) {
  int s = 0;
  while (s < top && chain.same_element(s + 1, chain.tree().root(), v)) ++s;
  return s;
}

}  // namespace

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const Letter& l : w) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l.value()));
    h *= 1099511628211ull;
  }
  return h;
}

int triviality_depth(const Word& w, int rank, int cap, const SolveOptions& options) {
  if (rank < 1 || cap < 0) throw std::invalid_argument("need rank >= 1 and cap >= 0");
  if (w.empty()) return cap;
  const PrefixTree tree = PrefixTree::of(w);
  ChainOptions chain_options{options.mode, options.rng, 0};
  if (options.mode == Mode::monte_carlo)
    chain_options.cube_bound = options.cube_bound.value_or(cube_bound_for(w.size(), 3));
  SupportChain chain(tree, chain_options);
  return trivial_through(chain, tree.end_of(0), cap);
}

PowerResult power_solve(const Word& u, const Word& v, int rank, int degree, const SolveOptions& options) {
  if (rank < 1 || degree < 0) throw std::invalid_argument("need rank >= 1 and degree >= 0");
  if (u.rank() > rank || v.rank() > rank) throw std::invalid_argument("word uses a generator above the rank");
  if (u.size() + v.size() >= kMaxWordLength) throw GuardError("inputs longer than 2^20 letters");
  if (degree == 0 || (u.empty() && v.empty())) return PowerResult::exponent(1);

  const std::uint64_t n = u.size() + v.size();
  const int top = 1 + std::min(degree, floor_log3(n));
  const int needed = std::min(top, degree);

  const Word comm = commutator(u, v);
  const std::array<Word, 3> words{u, v, comm};
  const PrefixTree tree{std::span<const Word>(words)};
  ChainOptions chain_options{options.mode, options.rng, 0};
  if (options.mode == Mode::monte_carlo) chain_options.cube_bound = options.cube_bound.value_or(cube_bound_for(n, 3, 9));
  SupportChain chain(tree, chain_options);

  // A nonempty word is never trivial at level `top`, so s == needed only when needed == degree.
  const int s = u.empty() ? kAlways : trivial_through(chain, tree.end_of(0), needed);
  const int t = v.empty() ? kAlways : trivial_through(chain, tree.end_of(1), needed);

  if (degree <= s && degree <= t) return PowerResult::exponent(1);
  if (s < degree && degree <= t) return PowerResult::fail();
  if (t < degree && degree <= s) return PowerResult::exponent(0);
  if (s != t) return PowerResult::fail();

  const EdgeNumbering numbering =
      edge_numbering(tree, chain.at(s).labels,
                     options.mode == Mode::deterministic ? FoldPolicy::check : FoldPolicy::allow);
  const auto flow_u = path_flow(tree, numbering, tree.end_of(0));
  const auto flow_v = path_flow(tree, numbering, tree.end_of(1));

  auto pivot = std::find_if(flow_v.begin(), flow_v.end(), [](std::int64_t x) { return x != 0; });
  if (pivot == flow_v.end()) return PowerResult::fail();
  const std::int64_t num = flow_u[pivot - flow_v.begin()];
  if (num % *pivot != 0) return PowerResult::fail();
  const std::int64_t k = num / *pivot;

  const bool comm_trivial =
      needed == degree ? chain.same_element(degree, tree.root(), tree.end_of(2)) : comm.empty();
  if (!comm_trivial) return PowerResult::fail();

  if (s == degree - 1)
    for (std::size_t e = 0; e < flow_u.size(); ++e)
      if (flow_u[e] != k * flow_v[e]) return PowerResult::fail();
  return PowerResult::exponent(k);
}

CyclicMembership::CyclicMembership(Word generator, int rank, int degree, SolveOptions options)
    : generator_(std::move(generator)), rank_(rank), degree_(degree), options_(options) {}

std::optional<std::int64_t> CyclicMembership::exponent(const Word& g) {
  std::lock_guard lock(*mutex_);
  auto it = memo_.find(g);
  if (it == memo_.end()) {
    ++calls_;
    it = memo_.emplace(g, power_solve(g, generator_, rank_, degree_, options_)).first;
  }
  return it->second.k;
}

bool CyclicMembership::contains(const Word& g) { return exponent(g).has_value(); }

}  // namespace fsg
