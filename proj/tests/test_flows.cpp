#include <doctest.h>

#include <memory>
#include <random>
#include <set>

#include "fsg/errors.hpp"
#include "fsg/flows.hpp"
#include "fsg/generators.hpp"
#include "fsg/oracle.hpp"
#include "fsg/word_problem.hpp"

using namespace fsg;

namespace {

std::shared_ptr<const XDigraph> shared(XDigraph g) { return std::make_shared<const XDigraph>(std::move(g)); }

}  // namespace

TEST_CASE("flow of the empty word is zero") {
  auto g = shared(bouquet(2));
  CHECK(flow_of(g, Word{}).is_zero());
}

TEST_CASE("flow of [x1,x2] on the unit square") {
  const Word c = parse("x1 x2 X1 X2");
  auto square = shared(iota(bouquet(2), c));
  const Flow f = flow_of(square, c);
  // Each edge of the square is crossed once, twice forwards and twice backwards.
  int forwards = 0, backwards = 0;
  for (EdgeId e = 0; e < square->edge_count(); ++e) {
    CHECK((f[e] == 1 || f[e] == -1));
    (f[e] > 0 ? forwards : backwards)++;
  }
  CHECK(forwards == 2);
  CHECK(backwards == 2);
  CHECK(is_circulation(f));
}

TEST_CASE("circulations") {
  auto g = shared(path_graph(parse("x1")));
  const Flow f = flow_of(g, parse("x1"));
  CHECK_FALSE(is_circulation(f));
  const auto sigma = f.balance();
  CHECK(sigma[0] == 1);
  CHECK(sigma[1] == -1);
  CHECK(is_circulation(Flow(g)));
}

TEST_CASE("update_step") {
  auto g = shared(path_graph(parse("x1 x2 x1")));
  const Flow zero(g);
  const Flow unit = update_step(zero, 0, 1);
  CHECK(unit[0] == 1);
  CHECK(unit[1] == 0);
  CHECK(update_step(unit, 0, -1) == zero);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const Word w = random_reduced_word(rng, 2, 12);
    auto h = shared(iota(bouquet(2), w));
    const auto p = trace(*h, w, h->root());
    REQUIRE(p.has_value());
    Flow f(h);
    for (const Step& s : p->steps) f = update_step(f, s.edge, s.direction);
    CHECK(f == flow_of(h, w));
    for (EdgeId e = 0; e < h->edge_count(); ++e) CHECK(std::abs(f[e]) <= static_cast<std::int64_t>(w.size()));
  }
}

TEST_CASE("balance of a path flow") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const Word w = random_reduced_word(rng, 3, 15);
    auto h = shared(iota(bouquet(3), w));
    const Flow f = flow_of(h, w);
    const auto sigma = f.balance();
    const Vertex end = trace(*h, w, h->root())->vertices.back();
    for (Vertex v = 0; v < h->vertex_count(); ++v) {
      std::int64_t expected = 0;
      if (v != end) expected += v == h->root() ? 1 : 0;
      if (v != h->root()) expected -= v == end ? 1 : 0;
      CHECK(sigma[v] == expected);
    }
  }
}

TEST_CASE("push_forward sums the edges of a morphism") {
  const Word w = parse("x1 x2 X1 X2 x1");
  const PrefixTree t = PrefixTree::of(w);
  auto path = shared(t.graph());
  auto square = shared(iota(bouquet(2), w));
  const auto p = trace(*square, w, square->root());
  REQUIRE(p.has_value());
  // Tree vertex i (prefix of length i) maps to the i-th vertex of the trace.
  std::vector<Vertex> map(t.vertex_count());
  for (std::size_t i = 0; i <= w.size(); ++i) map[t.node_of(0, i)] = p->vertices[i];
  CHECK(push_forward(flow_of(path, w), square, map) == flow_of(square, w));
}

TEST_CASE("flows on the support decide equality one level up") {
  // u = v in S_{2,d+1} iff u and v have equal flows on the common support at depth d.
  MagnusOracle oracle(2);
  const auto words = reduced_words(2, 4);
  for (int d = 1; d <= 2; ++d)
    for (const Word& u : words)
      for (const Word& v : words) {
        if (u.size() + v.size() > 6) continue;
        const std::vector<Word> pair{u, v};
        const PrefixTree t(pair);
        SupportChain chain(t, {});
        const EdgeNumbering n = edge_numbering(t, chain.at(d).labels);
        const bool same_flow = [&] {
          std::vector<std::int64_t> fu(n.edge_count), fv(n.edge_count);
          for (Vertex x = t.end_of(0); x != t.root(); x = t.parent(x))
            fu[std::abs(n.signed_edge[x]) - 1] += n.signed_edge[x] > 0 ? 1 : -1;
          for (Vertex x = t.end_of(1); x != t.root(); x = t.parent(x))
            fv[std::abs(n.signed_edge[x]) - 1] += n.signed_edge[x] > 0 ? 1 : -1;
          return fu == fv;
        }();
        CHECK(same_flow == (oracle.form(u, d + 1) == oracle.form(v, d + 1)));
      }
}

TEST_CASE("prefix flow classes") {
  const Word c = parse("x1 x2 X1 X2");
  const PrefixTree t = PrefixTree::of(c);
  const EdgeNumbering n = edge_numbering(t, std::vector<Label>(t.vertex_count(), 0));
  const auto labels = prefix_flow_classes(t, n.signed_edge, n.edge_count);
  CHECK(labels[t.node_of(0, 0)] == labels[t.node_of(0, 4)]);
  std::set<Label> distinct(labels.begin(), labels.end());
  CHECK(distinct.size() == 4);
}
