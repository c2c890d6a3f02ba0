#pragma once

// Rooted, folded, inverse X-digraphs. Only positive edges (label x_i, i > 0)
// are stored; each one implicitly carries its inverse.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsg/words.hpp"

namespace fsg {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::int64_t;

struct Edge {
  Vertex origin = 0;
  Vertex terminus = 0;
  int label = 1;  // generator index, always positive

  auto operator<=>(const Edge&) const = default;
};

/// One step of a path: a positive edge traversed forwards (+1) or backwards (-1).
struct Step {
  EdgeId edge = 0;
  int direction = 1;
};

class XDigraph {
 public:
  XDigraph() : XDigraph(1, 0, {}) {}
  /// Throws FoldConflict if two edges leave one vertex with the same signed label.
  XDigraph(std::size_t vertex_count, Vertex root, std::vector<Edge> positive_edges);

  std::size_t vertex_count() const { return vertex_count_; }
  Vertex root() const { return root_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  /// The edge leaving `v` labeled `l`, if any.
  std::optional<Step> step(Vertex v, Letter l) const;
  Vertex target(Vertex /*from*/, Step s) const {
    return s.direction > 0 ? edges_[s.edge].terminus : edges_[s.edge].origin;
  }

  /// Length of a shortest cycle (loops count 1); 0 if the graph is a tree.
  std::size_t girth() const;
  bool is_tree() const { return edges_.size() + 1 == vertex_count_; }

  /// Same vertex/edge structure up to a root-preserving, label-preserving bijection.
  bool isomorphic(const XDigraph& other) const;

  std::string to_dot() const;

 private:
  static std::uint64_t key(Vertex v, Letter l) {
    return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(l.value());
  }

  std::size_t vertex_count_ = 1;
  Vertex root_ = 0;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, Step> index_;
};

/// Γ(w) for a set of words: the tree of all prefixes, rooted at ε.
/// Vertices are numbered so that every parent precedes its children.
class PrefixTree {
 public:
  explicit PrefixTree(std::span<const Word> words);
  static PrefixTree of(const Word& w) { return PrefixTree(std::span<const Word>(&w, 1)); }

  std::size_t vertex_count() const { return parent_.size(); }
  Vertex root() const { return 0; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  /// Letter on the tree edge parent(v) -> v; meaningless for the root.
  Letter letter_into(Vertex v) const { return letter_[v]; }
  std::size_t depth(Vertex v) const { return depth_[v]; }

  std::size_t word_count() const { return nodes_.size(); }
  /// Vertex of the prefix of word `i` of length `position`.
  Vertex node_of(std::size_t i, std::size_t position) const { return nodes_[i][position]; }
  Vertex end_of(std::size_t i) const { return nodes_[i].back(); }
  std::span<const Vertex> nodes(std::size_t i) const { return nodes_[i]; }

  /// Word spelled by the root-to-v path.
  Word word_at(Vertex v) const;

  const XDigraph& graph() const { return graph_; }
  std::size_t diameter() const;

 private:
  std::vector<Vertex> parent_;
  std::vector<Letter> letter_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<Vertex>> nodes_;
  XDigraph graph_;
};

/// Γ(w): |w|+1 vertices on a line.
XDigraph path_graph(const Word& w);

PrefixTree prefix_tree(std::span<const Word> words);

/// One vertex carrying a loop for every generator 1..rank.
XDigraph bouquet(int rank);

/// Dense ranks 0..n-1 of the distinct values, in increasing value order.
std::vector<Vertex> dense_ranks(std::span<const Label> labels);

/// Γ_ν: vertices are distinct labels (dense ids in sorted order), edges are
/// images of tree edges. Throws FoldConflict if the image does not fold.
XDigraph quotient_by_labeling(const PrefixTree& tree, std::span<const Label> labels);

struct Path {
  std::vector<Vertex> vertices;
  std::vector<Step> steps;
};

/// The unique path from `start` spelling `w`, or nullopt if some step is missing.
std::optional<Path> trace(const XDigraph& g, const Word& w, Vertex start);

/// Canonical numbering of the edges of Γ_ν as seen from the tree.
/// `signed_edge[v]` is ±(id+1) for the quotient edge traversed by the tree
/// edge into v (0 for the root); ids follow the lexicographic order of the
/// (origin, terminus, generator) triples.
struct EdgeNumbering {
  std::vector<std::int32_t> signed_edge;
  std::size_t edge_count = 0;
  std::vector<Edge> edges;  // quotient edges in numbering order
};

enum class FoldPolicy { check, allow };

/// With FoldPolicy::check, throws FoldConflict if Γ_ν does not fold.
EdgeNumbering edge_numbering(const PrefixTree& tree, std::span<const Label> labels,
                             FoldPolicy policy = FoldPolicy::check);

/// ι(G): the quotient of Γ(w) identifying prefixes with equal flows on G.
/// Throws NotTraceable if w cannot be traced from the root of G.
XDigraph iota(const XDigraph& g, const Word& w);

}  // namespace fsg
