#include "fsg/word_problem.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "fsg/errors.hpp"
#include "fsg/flows.hpp"

namespace fsg {

namespace {

using Narrow = unsigned __int128;

struct ChildIndex {
  std::vector<std::uint32_t> start;
  std::vector<Vertex> child;
};

ChildIndex children_of(const PrefixTree& tree) {
  const std::size_t n = tree.vertex_count();
  ChildIndex idx;
  idx.start.assign(n + 1, 0);
  for (Vertex v = 1; v < n; ++v) ++idx.start[tree.parent(v) + 1];
  std::partial_sum(idx.start.begin(), idx.start.end(), idx.start.begin());
  idx.child.resize(n > 0 ? n - 1 : 0);
  std::vector<std::uint32_t> fill(idx.start.begin(), idx.start.end() - 1);
  for (Vertex v = 1; v < n; ++v) idx.child[fill[tree.parent(v)]++] = v;
  return idx;
}

// d²(A, A_v) per vertex. rel[j] holds A_{v,j} - a_j along the current DFS path.
template <class Acc>
std::vector<Acc> squared_distances(const PrefixTree& tree, std::span<const std::int32_t> signed_edge,
                                   std::span<const std::uint64_t> anchor) {
  const std::size_t n = tree.vertex_count();
  std::vector<std::int64_t> rel(anchor.size());
  Acc root = 0;
  for (std::size_t j = 0; j < anchor.size(); ++j) {
    rel[j] = -static_cast<std::int64_t>(anchor[j]);
    root += Acc(anchor[j]) * Acc(anchor[j]);
  }
  std::vector<Acc> out(n);
  out[tree.root()] = root;

  const ChildIndex idx = children_of(tree);
  struct Frame {
    Vertex v;
    std::uint32_t next;
  };
  std::vector<Frame> stack{{tree.root(), idx.start[tree.root()]}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == idx.start[top.v + 1]) {
      if (top.v != tree.root()) {
        const std::int32_t s = signed_edge[top.v];
        rel[std::abs(s) - 1] -= s > 0 ? 1 : -1;
      }
      stack.pop_back();
      continue;
    }
    const Vertex c = idx.child[top.next++];
    const std::int32_t s = signed_edge[c];
    const std::size_t j = static_cast<std::size_t>(std::abs(s) - 1);
    const std::int64_t old = rel[j];
    const std::int64_t now = old + (s > 0 ? 1 : -1);
    const auto magnitude = static_cast<std::uint64_t>(old < 0 ? -old : old);
    const auto grown = static_cast<std::uint64_t>(now < 0 ? -now : now);
    if (grown > magnitude)
      out[c] = out[top.v] + (Acc(magnitude) * 2 + 1);
    else
      out[c] = out[top.v] - (Acc(magnitude) * 2 - 1);
    rel[j] = now;
    stack.push_back({c, idx.start[c]});
  }
  return out;
}

template <class Acc>
std::vector<Label> rank_values(const std::vector<Acc>& values) {
  std::vector<Vertex> order(values.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return values[a] < values[b]; });
  std::vector<Label> labels(values.size());
  Label next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && values[order[i]] != values[order[i - 1]]) ++next;
    labels[order[i]] = next;
  }
  return labels;
}

std::size_t max_depth(const PrefixTree& tree) {
  std::size_t d = 0;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) d = std::max(d, tree.depth(v));
  return d;
}

enum class Width { narrow, wide };

// Picks an accumulator that holds every d² value: m·(B + depth)².
Width accumulator_width(std::size_t edge_count, std::uint64_t cube_bound, std::size_t depth) {
  const Wide reach = Wide(cube_bound) + Wide(depth);
  const Wide bound = Wide(std::max<std::size_t>(edge_count, 1)) * reach * reach;
  if (bound < (Wide(1) << 127)) return Width::narrow;
  if (bound < (Wide(1) << 255)) return Width::wide;
  throw GuardError("squared distances exceed 256 bits; shrink the cube bound or the input");
}

std::vector<Label> fingerprint_labels(const PrefixTree& tree, const EdgeNumbering& numbering,
                                      std::span<const std::uint64_t> anchor, std::uint64_t cube_bound) {
  if (accumulator_width(numbering.edge_count, cube_bound, max_depth(tree)) == Width::narrow)
    return rank_values(squared_distances<Narrow>(tree, numbering.signed_edge, anchor));
  return rank_values(squared_distances<Wide>(tree, numbering.signed_edge, anchor));
}

}  // namespace

Distinguisher trivial_distinguisher(std::size_t vertex_count) {
  return Distinguisher{std::vector<Label>(vertex_count, 0), 0};
}

Distinguisher refine_deterministic(const PrefixTree& tree, const Distinguisher& previous) {
  const EdgeNumbering numbering = edge_numbering(tree, previous.labels, FoldPolicy::check);
  return Distinguisher{prefix_flow_classes(tree, numbering.signed_edge, numbering.edge_count), previous.depth + 1};
}

Distinguisher refine_deterministic(const Word& w, const Distinguisher& previous) {
  return refine_deterministic(PrefixTree::of(w), previous);
}

std::vector<std::uint64_t> sample_anchor(Rng& rng, std::size_t edge_count, std::uint64_t cube_bound) {
  std::uniform_int_distribution<std::uint64_t> coordinate(0, cube_bound);
  std::vector<std::uint64_t> anchor(edge_count);
  for (auto& a : anchor) a = coordinate(rng);
  return anchor;
}

Distinguisher refine_randomized(const PrefixTree& tree, const Distinguisher& previous, Rng& rng,
                                std::uint64_t cube_bound) {
  // A candidate ν may not fold; the triple numbering is still well defined.
  const EdgeNumbering numbering = edge_numbering(tree, previous.labels, FoldPolicy::allow);
  const auto anchor = sample_anchor(rng, numbering.edge_count, cube_bound);
  return Distinguisher{fingerprint_labels(tree, numbering, anchor, cube_bound), previous.depth + 1};
}

Distinguisher refine_randomized(const Word& w, const Distinguisher& previous, Rng& rng, std::uint64_t cube_bound) {
  return refine_randomized(PrefixTree::of(w), previous, rng, cube_bound);
}

Fingerprint fingerprint(const PrefixTree& tree, const EdgeNumbering& numbering, std::vector<std::uint64_t> anchor,
                        std::uint64_t cube_bound) {
  if (anchor.size() != numbering.edge_count) throw std::invalid_argument("one anchor coordinate per edge");
  Fingerprint fp;
  fp.squared_distance = squared_distances<Wide>(tree, numbering.signed_edge, anchor);
  fp.anchor = std::move(anchor);
  fp.cube_bound = cube_bound;
  return fp;
}

std::uint64_t cube_bound_for(std::uint64_t n, int exponent, std::uint64_t factor) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  Wide b = factor;
  for (int i = 0; i < exponent; ++i) b *= std::max<std::uint64_t>(n, 1);
  if (b > kLimit) throw GuardError("cube bound exceeds 2^62; lower the cube exponent");
  return static_cast<std::uint64_t>(b);
}

SupportChain::SupportChain(const PrefixTree& tree, ChainOptions options) : tree_(tree), options_(options) {
  if (options_.mode == Mode::monte_carlo && options_.rng == nullptr)
    throw std::invalid_argument("Monte Carlo mode needs a random source");
  levels_.push_back(trivial_distinguisher(tree_.vertex_count()));
}

const Distinguisher& SupportChain::at(int depth) {
  while (static_cast<int>(levels_.size()) <= depth) {
    const Distinguisher& prev = levels_.back();
    levels_.push_back(options_.mode == Mode::deterministic
                          ? refine_deterministic(tree_, prev)
                          : refine_randomized(tree_, prev, *options_.rng, options_.cube_bound));
  }
  return levels_[depth];
}

int floor_log3(std::uint64_t n) {
  int d = 0;
  for (std::uint64_t p = 3; p <= n; p *= 3) {
    ++d;
    if (p > n / 3) break;
  }
  return d;
}

bool word_problem(const Word& w, int rank, int degree, Mode mode, Rng* rng,
                  std::optional<std::uint64_t> cube_bound) {
  if (rank < 1 || degree < 0) throw std::invalid_argument("need rank >= 1 and degree >= 0");
  if (w.rank() > rank) throw std::invalid_argument("word uses a generator above the rank");
  if (w.size() >= kMaxWordLength) throw GuardError("word longer than 2^20 letters");
  if (mode == Mode::monte_carlo && rng == nullptr) throw std::invalid_argument("Monte Carlo mode needs a generator");
  if (w.empty() || degree == 0) return true;
  // A nonempty relator of S_{r,d} has length at least 3^d.
  if (degree > floor_log3(w.size())) return false;

  const PrefixTree tree = PrefixTree::of(w);
  ChainOptions options{mode, rng, 0};
  if (mode == Mode::monte_carlo) options.cube_bound = cube_bound.value_or(cube_bound_for(w.size(), 3));
  SupportChain chain(tree, options);
  return chain.same_element(degree, tree.root(), tree.end_of(0));
}

}  // namespace fsg
