#include <doctest.h>

#include <random>
#include <set>

#include "fsg/errors.hpp"
#include "fsg/generators.hpp"
#include "fsg/oracle.hpp"
#include "fsg/word_problem.hpp"

using namespace fsg;

TEST_CASE("word problem examples") {
  const Word c = parse("x1 x2 X1 X2");
  CHECK(word_problem(c, 2, 1));
  CHECK_FALSE(word_problem(c, 2, 2));
  const Word cc = commutator(c, parse("x3 x4 X3 X4"));
  CHECK(cc.size() == 16);
  CHECK(word_problem(cc, 4, 2));
  CHECK_FALSE(word_problem(cc, 4, 3));
  CHECK(word_problem(Word{}, 1, 5));
  CHECK(word_problem(parse("x1"), 1, 0));
  CHECK_FALSE(word_problem(parse("x1"), 1, 1));
}

TEST_CASE("word problem argument checks") {
  CHECK_THROWS_AS(word_problem(parse("x3"), 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(word_problem(parse("x1"), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(word_problem(parse("x1"), 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(word_problem(parse("x1"), 1, 1, Mode::monte_carlo, nullptr), std::invalid_argument);
}

TEST_CASE("deterministic refinement from the trivial labeling") {
  const Word c = parse("x1 x2 X1 X2");
  const Distinguisher nu1 = refine_deterministic(c, trivial_distinguisher(5));
  CHECK(nu1.depth == 1);
  CHECK(nu1.labels[0] == nu1.labels[4]);
  CHECK(std::set<Label>(nu1.labels.begin(), nu1.labels.end()).size() == 4);

  const Distinguisher aa = refine_deterministic(parse("x1 x1"), trivial_distinguisher(3));
  CHECK(std::set<Label>(aa.labels.begin(), aa.labels.end()).size() == 3);
}

TEST_CASE("distinguishers agree with the Magnus oracle on every prefix") {
  MagnusOracle oracle(2);
  for (const Word& w : reduced_words(2, 7)) {
    const PrefixTree t = PrefixTree::of(w);
    SupportChain chain(t, {});
    for (int d = 1; d <= 2; ++d)
      for (std::size_t i = 0; i <= w.size(); ++i)
        CHECK(chain.same_element(d, t.root(), t.node_of(0, i)) == oracle.trivial(w.prefix(i), d));
  }
}

TEST_CASE("incremental squared distances match recomputation") {
  CHECK((-7) * (-7) - (-6) * (-6) == 2 * 6 + 1);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const Word w = random_reduced_word(rng, 2, 40);
    const PrefixTree tree = PrefixTree::of(w);
    SupportChain chain(tree, {});
    const EdgeNumbering n = edge_numbering(tree, chain.at(1).labels);
    const std::uint64_t bound = cube_bound_for(w.size(), 3);
    const Fingerprint fp = fingerprint(tree, n, sample_anchor(rng, n.edge_count, bound), bound);
    std::vector<std::int64_t> flow(n.edge_count, 0);
    for (std::size_t k = 0; k <= w.size(); ++k) {
      if (k > 0) {
        const std::int32_t s = n.signed_edge[tree.node_of(0, k)];
        flow[std::abs(s) - 1] += s > 0 ? 1 : -1;
      }
      Wide direct = 0;
      for (std::size_t j = 0; j < flow.size(); ++j) {
        const std::int64_t diff = static_cast<std::int64_t>(fp.anchor[j]) - flow[j];
        direct += Wide(diff < 0 ? -diff : diff) * Wide(diff < 0 ? -diff : diff);
      }
      CHECK(fp.squared_distance[tree.node_of(0, k)] == direct);
    }
  }
}

TEST_CASE("Monte Carlo never rejects a trivial word") {
  std::mt19937_64 gen(12);
  Rng rng(99);
  for (int t = 0; t < 20; ++t) {
    const Word w = known_trivial_word(gen, 2, 2, 16, 120);
    for (int s = 0; s < 20; ++s) CHECK(word_problem(w, 2, 2, Mode::monte_carlo, &rng));
  }
}

TEST_CASE("Monte Carlo agrees with deterministic mode on random words") {
  std::mt19937_64 gen(13);
  Rng rng(100);
  for (int t = 0; t < 200; ++t) {
    const Word w = random_reduced_word(gen, 2, 30);
    CHECK(word_problem(w, 2, 2, Mode::monte_carlo, &rng) == word_problem(w, 2, 2));
  }
}

TEST_CASE("cube bound guard") {
  CHECK(cube_bound_for(10, 3) == 1000);
  CHECK(cube_bound_for(10, 3, 9) == 9000);
  CHECK_THROWS_AS(cube_bound_for(std::uint64_t{1} << 21, 3), GuardError);
}

TEST_CASE("floor_log3") {
  CHECK(floor_log3(0) == 0);
  CHECK(floor_log3(2) == 0);
  CHECK(floor_log3(3) == 1);
  CHECK(floor_log3(8) == 1);
  CHECK(floor_log3(9) == 2);
  CHECK(floor_log3(26) == 2);
  CHECK(floor_log3(27) == 3);
}

TEST_CASE("the answer is invariant under generator renaming") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 50; ++t) {
    const Word w = known_trivial_word(gen, 3, 2, 16, 80);
    const NormalizedWord n = normalize_rank(w);
    CHECK(word_problem(n.word, n.word.rank(), 2) == word_problem(w, 3, 2));
    const Word v = random_reduced_word(gen, 3, 20);
    const NormalizedWord m = normalize_rank(v);
    CHECK(word_problem(m.word, m.word.rank(), 2) == word_problem(v, 3, 2));
  }
}
