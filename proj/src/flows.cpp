#include "fsg/flows.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fsg/errors.hpp"

namespace fsg {

Flow::Flow(std::shared_ptr<const XDigraph> graph)
    : graph_(std::move(graph)), values_(graph_->edge_count(), 0) {}

Flow::Flow(std::shared_ptr<const XDigraph> graph, std::vector<std::int64_t> values)
    : graph_(std::move(graph)), values_(std::move(values)) {
  if (values_.size() != graph_->edge_count()) throw std::invalid_argument("flow size differs from edge count");
}

bool Flow::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](std::int64_t v) { return v == 0; });
}

std::vector<std::int64_t> Flow::balance() const {
  std::vector<std::int64_t> sigma(graph_->vertex_count(), 0);
  for (EdgeId e = 0; e < values_.size(); ++e) {
    sigma[graph_->edge(e).origin] += values_[e];
    sigma[graph_->edge(e).terminus] -= values_[e];
  }
  return sigma;
}

Flow flow_of(std::shared_ptr<const XDigraph> graph, const Word& w) {
  auto path = trace(*graph, w, graph->root());
  if (!path) throw NotTraceable("word leaves the graph");
  std::vector<std::int64_t> values(graph->edge_count(), 0);
  for (const Step& s : path->steps) values[s.edge] += s.direction;
  return Flow(std::move(graph), std::move(values));
}

bool is_circulation(const Flow& f) {
  const auto sigma = f.balance();
  return std::all_of(sigma.begin(), sigma.end(), [](std::int64_t s) { return s == 0; });
}

Flow update_step(const Flow& f, EdgeId edge, int direction) {
  std::vector<std::int64_t> values(f.values().begin(), f.values().end());
  values.at(edge) += direction;
  return Flow(f.graph_ptr(), std::move(values));
}

Flow push_forward(const Flow& f, std::shared_ptr<const XDigraph> target, std::span<const Vertex> vertex_map) {
  std::vector<std::int64_t> values(target->edge_count(), 0);
  const XDigraph& source = f.graph();
  for (EdgeId e = 0; e < source.edge_count(); ++e) {
    const Edge& edge = source.edge(e);
    auto s = target->step(vertex_map[edge.origin], Letter(edge.label, 1));
    if (!s || target->target(vertex_map[edge.origin], *s) != vertex_map[edge.terminus])
      throw std::invalid_argument("vertex map is not a graph morphism");
    values[s->edge] += s->direction * f[e];
  }
  return Flow(std::move(target), std::move(values));
}

std::vector<Label> prefix_flow_classes(const PrefixTree& tree, std::span<const std::int32_t> signed_edge,
                                       std::size_t edge_count) {
  const std::size_t n = tree.vertex_count();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  // Classes are the half-open runs [starts[i], starts[i+1]) of `order`.
  std::vector<std::uint32_t> starts{0, static_cast<std::uint32_t>(n)};
  std::vector<std::uint32_t> next_starts;
  std::vector<std::int32_t> column(n, 0);

  for (std::int32_t e = 1; e <= static_cast<std::int32_t>(edge_count); ++e) {
    // Component e of every root-path flow; parents precede children.
    for (Vertex v = 1; v < n; ++v) {
      const std::int32_t s = signed_edge[v];
      column[v] = column[tree.parent(v)] + (s == e ? 1 : (s == -e ? -1 : 0));
    }
    next_starts.clear();
    for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
      const std::uint32_t a = starts[c];
      const std::uint32_t b = starts[c + 1];
      next_starts.push_back(a);
      if (b - a < 2) continue;
      const std::int32_t first = column[order[a]];
      bool uniform = true;
      for (std::uint32_t i = a + 1; i < b && uniform; ++i) uniform = column[order[i]] == first;
      if (uniform) continue;
      std::stable_sort(order.begin() + a, order.begin() + b,
                       [&](Vertex x, Vertex y) { return column[x] < column[y]; });
      for (std::uint32_t i = a + 1; i < b; ++i)
        if (column[order[i]] != column[order[i - 1]]) next_starts.push_back(i);
    }
    next_starts.push_back(static_cast<std::uint32_t>(n));
    starts.swap(next_starts);
  }

  std::vector<Label> labels(n);
  for (std::size_t c = 0; c + 1 < starts.size(); ++c)
    for (std::uint32_t i = starts[c]; i < starts[c + 1]; ++i) labels[order[i]] = static_cast<Label>(c);
  return labels;
}

}  // namespace fsg
