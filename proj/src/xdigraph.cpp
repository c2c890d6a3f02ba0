#include "fsg/xdigraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fsg/errors.hpp"
#include "fsg/flows.hpp"

namespace fsg {

XDigraph::XDigraph(std::size_t vertex_count, Vertex root, std::vector<Edge> positive_edges)
    : vertex_count_(vertex_count), root_(root), edges_(std::move(positive_edges)) {
  if (vertex_count_ == 0 || root_ >= vertex_count_) throw std::invalid_argument("root out of range");
  index_.reserve(edges_.size() * 2);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.label <= 0) throw std::invalid_argument("positive edges carry positive labels");
    if (edge.origin >= vertex_count_ || edge.terminus >= vertex_count_)
      throw std::invalid_argument("edge endpoint out of range");
    auto insert = [&](Vertex v, Letter l, Step s) {
      auto [it, inserted] = index_.try_emplace(key(v, l), s);
      if (!inserted) {
        std::ostringstream msg;
        msg << "fold conflict at vertex " << v << " on letter " << l.value();
        throw FoldConflict(msg.str());
      }
    };
    insert(edge.origin, Letter(edge.label, 1), Step{e, 1});
    insert(edge.terminus, Letter(edge.label, -1), Step{e, -1});
  }
}

std::optional<Step> XDigraph::step(Vertex v, Letter l) const {
  auto it = index_.find(key(v, l));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t XDigraph::girth() const {
  std::size_t best = 0;
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(vertex_count_);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.origin == edge.terminus) return 1;
    adj[edge.origin].emplace_back(edge.terminus, e);
    adj[edge.terminus].emplace_back(edge.origin, e);
  }
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  for (Vertex s = 0; s < vertex_count_; ++s) {
    std::vector<std::size_t> dist(vertex_count_, kUnseen);
    std::vector<EdgeId> via(vertex_count_, std::numeric_limits<EdgeId>::max());
    std::deque<Vertex> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (auto [u, e] : adj[v]) {
        if (e == via[v]) continue;
        if (dist[u] == kUnseen) {
          dist[u] = dist[v] + 1;
          via[u] = e;
          queue.push_back(u);
        } else {
          const std::size_t len = dist[u] + dist[v] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

bool XDigraph::isomorphic(const XDigraph& other) const {
  if (vertex_count_ != other.vertex_count_ || edges_.size() != other.edges_.size()) return false;
  constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> map(vertex_count_, kUnset);
  std::vector<std::vector<Letter>> out(vertex_count_);
  for (const Edge& e : edges_) {
    out[e.origin].emplace_back(e.label, 1);
    out[e.terminus].emplace_back(e.label, -1);
  }
  std::deque<Vertex> queue{root_};
  map[root_] = other.root_;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Letter l : out[v]) {
      auto mine = step(v, l);
      auto theirs = other.step(map[v], l);
      if (!theirs) return false;
      const Vertex u = target(v, *mine);
      const Vertex w = other.target(map[v], *theirs);
      if (map[u] == kUnset) {
        map[u] = w;
        queue.push_back(u);
      } else if (map[u] != w) {
        return false;
      }
    }
  }
  std::vector<bool> hit(vertex_count_, false);
  for (Vertex m : map) {
    if (m == kUnset || hit[m]) return false;
    hit[m] = true;
  }
  return true;
}

std::string XDigraph::to_dot() const {
  std::ostringstream out;
  out << "digraph G {\n  " << root_ << " [shape=doublecircle];\n";
  for (const Edge& e : edges_)
    out << "  " << e.origin << " -> " << e.terminus << " [label=\"x" << e.label << "\"];\n";
  out << "}\n";
  return out.str();
}

PrefixTree::PrefixTree(std::span<const Word> words) {
  parent_.push_back(0);
  letter_.emplace_back();
  depth_.push_back(0);
  std::unordered_map<std::uint64_t, Vertex> child;
  auto key = [](Vertex v, Letter l) {
    return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(l.value());
  };
  nodes_.reserve(words.size());
  for (const Word& w : words) {
    std::vector<Vertex> path{0};
    path.reserve(w.size() + 1);
    Vertex v = 0;
    for (const Letter& l : w) {
      auto [it, inserted] = child.try_emplace(key(v, l), static_cast<Vertex>(parent_.size()));
      if (inserted) {
        parent_.push_back(v);
        letter_.push_back(l);
        depth_.push_back(depth_[v] + 1);
      }
      v = it->second;
      path.push_back(v);
    }
    nodes_.push_back(std::move(path));
  }
  std::vector<Edge> edges;
  edges.reserve(parent_.size() - 1);
  for (Vertex v = 1; v < parent_.size(); ++v) {
    const Letter l = letter_[v];
    if (l.sign() > 0)
      edges.push_back({parent_[v], v, l.generator()});
    else
      edges.push_back({v, parent_[v], l.generator()});
  }
  graph_ = XDigraph(parent_.size(), 0, std::move(edges));
}

Word PrefixTree::word_at(Vertex v) const {
  std::vector<Letter> letters(depth_[v]);
  for (std::size_t i = depth_[v]; i > 0; --i) {
    letters[i - 1] = letter_[v];
    v = parent_[v];
  }
  return Word(letters);
}

std::size_t PrefixTree::diameter() const {
  const std::size_t n = vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 1; v < n; ++v) {
    adj[v].push_back(parent_[v]);
    adj[parent_[v]].push_back(v);
  }
  auto farthest = [&](Vertex s) {
    std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
    std::deque<Vertex> queue{s};
    dist[s] = 0;
    Vertex last = s;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      last = v;
      for (Vertex u : adj[v])
        if (dist[u] == std::numeric_limits<std::size_t>::max()) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
    }
    return std::pair{last, dist[last]};
  };
  return farthest(farthest(0).first).second;
}

XDigraph path_graph(const Word& w) { return PrefixTree::of(w).graph(); }

PrefixTree prefix_tree(std::span<const Word> words) { return PrefixTree(words); }

XDigraph bouquet(int rank) {
  std::vector<Edge> edges;
  for (int i = 1; i <= rank; ++i) edges.push_back({0, 0, i});
  return XDigraph(1, 0, std::move(edges));
}

std::vector<Vertex> dense_ranks(std::span<const Label> labels) {
  std::vector<Vertex> order(labels.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(),
            [&](Vertex a, Vertex b) { return labels[a] < labels[b]; });
  std::vector<Vertex> rank(labels.size());
  Vertex next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && labels[order[i]] != labels[order[i - 1]]) ++next;
    rank[order[i]] = next;
  }
  return rank;
}

namespace {

struct Triple {
  Vertex origin;
  Vertex terminus;
  int label;
  auto operator<=>(const Triple&) const = default;
};

// Positive-oriented image of the tree edge into v.
Triple image_of(const PrefixTree& tree, std::span<const Vertex> rank, Vertex v) {
  const Letter l = tree.letter_into(v);
  const Vertex a = rank[tree.parent(v)];
  const Vertex b = rank[v];
  return l.sign() > 0 ? Triple{a, b, l.generator()} : Triple{b, a, l.generator()};
}

void check_folded(std::span<const Edge> edges) {
  std::unordered_map<std::uint64_t, Vertex> seen;
  auto probe = [&](Vertex v, int signed_label, Vertex to) {
    const std::uint64_t k = (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(signed_label);
    auto [it, inserted] = seen.try_emplace(k, to);
    if (!inserted && it->second != to) {
      std::ostringstream msg;
      msg << "labeling does not fold at quotient vertex " << v << " on letter " << signed_label;
      throw FoldConflict(msg.str());
    }
  };
  for (const Edge& e : edges) {
    probe(e.origin, e.label, e.terminus);
    probe(e.terminus, -e.label, e.origin);
  }
}

}  // namespace

EdgeNumbering edge_numbering(const PrefixTree& tree, std::span<const Label> labels, FoldPolicy policy) {
  if (labels.size() != tree.vertex_count()) throw std::invalid_argument("one label per tree vertex");
  const std::vector<Vertex> rank = dense_ranks(labels);
  const std::size_t n = tree.vertex_count();

  std::vector<Triple> triples;
  triples.reserve(n > 0 ? n - 1 : 0);
  for (Vertex v = 1; v < n; ++v) triples.push_back(image_of(tree, rank, v));
  std::vector<Triple> sorted = triples;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  EdgeNumbering out;
  out.edge_count = sorted.size();
  out.edges.reserve(sorted.size());
  for (const Triple& t : sorted) out.edges.push_back({t.origin, t.terminus, t.label});
  if (policy == FoldPolicy::check) check_folded(out.edges);

  out.signed_edge.assign(n, 0);
  for (Vertex v = 1; v < n; ++v) {
    const Triple& t = triples[v - 1];
    const auto id = static_cast<std::int32_t>(std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
    out.signed_edge[v] = tree.letter_into(v).sign() > 0 ? id + 1 : -(id + 1);
  }
  return out;
}

XDigraph quotient_by_labeling(const PrefixTree& tree, std::span<const Label> labels) {
  EdgeNumbering numbering = edge_numbering(tree, labels, FoldPolicy::check);
  const std::vector<Vertex> rank = dense_ranks(labels);
  const std::size_t vertices = rank.empty() ? 1 : *std::max_element(rank.begin(), rank.end()) + 1;
  return XDigraph(vertices, rank[tree.root()], std::move(numbering.edges));
}

std::optional<Path> trace(const XDigraph& g, const Word& w, Vertex start) {
  Path p;
  p.vertices.reserve(w.size() + 1);
  p.steps.reserve(w.size());
  p.vertices.push_back(start);
  Vertex v = start;
  for (const Letter& l : w) {
    auto s = g.step(v, l);
    if (!s) return std::nullopt;
    v = g.target(v, *s);
    p.steps.push_back(*s);
    p.vertices.push_back(v);
  }
  return p;
}

XDigraph iota(const XDigraph& g, const Word& w) {
  auto path = trace(g, w, g.root());
  if (!path) throw NotTraceable("word is not traceable in the support graph");
  const PrefixTree tree = PrefixTree::of(w);
  std::vector<std::int32_t> signed_edge(tree.vertex_count(), 0);
  for (std::size_t j = 0; j < path->steps.size(); ++j) {
    const Step s = path->steps[j];
    signed_edge[j + 1] = s.direction > 0 ? static_cast<std::int32_t>(s.edge) + 1
                                         : -static_cast<std::int32_t>(s.edge) - 1;
  }
  const std::vector<Label> classes = prefix_flow_classes(tree, signed_edge, g.edge_count());
  return quotient_by_labeling(tree, classes);
}

}  // namespace fsg
