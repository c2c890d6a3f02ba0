#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fsg/xdigraph.hpp"

namespace fsg {

/// Integer function on the positive edges of one particular graph.
class Flow {
 public:
  explicit Flow(std::shared_ptr<const XDigraph> graph);
  Flow(std::shared_ptr<const XDigraph> graph, std::vector<std::int64_t> values);

  const XDigraph& graph() const { return *graph_; }
  const std::shared_ptr<const XDigraph>& graph_ptr() const { return graph_; }
  std::span<const std::int64_t> values() const { return values_; }
  std::int64_t operator[](EdgeId e) const { return values_[e]; }

  bool is_zero() const;

  /// σ(v) = outgoing minus incoming flow, per vertex.
  std::vector<std::int64_t> balance() const;

  /// Equal only when both flows live on the same graph object.
  bool operator==(const Flow& other) const {
    return graph_ == other.graph_ && values_ == other.values_;
  }

 private:
  std::shared_ptr<const XDigraph> graph_;
  std::vector<std::int64_t> values_;
};

/// π_w: signed traversal counts of the trace of w from the root.
/// Throws NotTraceable when w leaves the graph.
Flow flow_of(std::shared_ptr<const XDigraph> graph, const Word& w);

bool is_circulation(const Flow& f);

/// f with component `edge` moved by `direction` (±1).
Flow update_step(const Flow& f, EdgeId edge, int direction);

/// Image of a flow under a rooted label-preserving morphism Γ -> Δ given by
/// its vertex map: each Δ-edge receives the sum of the Γ-edges mapped onto it.
Flow push_forward(const Flow& f, std::shared_ptr<const XDigraph> target, std::span<const Vertex> vertex_map);

/// Labels tree vertices by the lexicographic rank of their root-path flow
/// vectors over `edge_count` numbered edges. `signed_edge` is as in
/// EdgeNumbering. Equal labels exactly when the flows are equal.
std::vector<Label> prefix_flow_classes(const PrefixTree& tree, std::span<const std::int32_t> signed_edge,
                                       std::size_t edge_count);

}  // namespace fsg
