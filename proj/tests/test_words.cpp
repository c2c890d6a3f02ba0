#include <doctest.h>

#include <random>

#include "fsg/errors.hpp"
#include "fsg/generators.hpp"
#include "fsg/words.hpp"

using namespace fsg;

TEST_CASE("parse reads tokens, exponents and compact letters") {
  const Word c = parse("x1 x2 X1 X2");
  CHECK(c.size() == 4);
  CHECK(c == Word{1, 2, -1, -2});
  CHECK(parse("x1 X1").empty());
  CHECK(parse("1").empty());
  CHECK(parse("").empty());
  CHECK(parse("abAB") == c);
  CHECK(parse("x1^3") == Word{1, 1, 1});
  CHECK(parse("x2^-2") == Word{-2, -2});
  CHECK(parse("x1^0").empty());
}

TEST_CASE("the grid word parses to ten letters") {
  const Word w = parse("x2 x1 x2 x1 x2 X1 x2^-3 X1");
  CHECK(w.size() == 10);
  CHECK(w == Word{2, 1, 2, 1, 2, -1, -2, -2, -2, -1});
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse("x0"), ParseError);
  CHECK_THROWS_AS(parse("y1"), ParseError);
  CHECK_THROWS_AS(parse("x1^"), ParseError);
  CHECK_THROWS_AS(parse("x1^2^3"), ParseError);
  CHECK(parse("x") == parse("x24"));
  CHECK_THROWS_AS(parse("x3", 2), ParseError);
  CHECK_NOTHROW(parse("x2", 2));
}

TEST_CASE("free reduction") {
  const Letter a(1, 1), A(1, -1), b(2, 1), B(2, -1);
  const std::vector<Letter> v1{a, A};
  CHECK(free_reduce(v1).empty());
  const std::vector<Letter> v2{a, b, B, a};
  CHECK(free_reduce(v2) == Word{1, 1});

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> code(0, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> raw;
    for (int i = 0; i < 20; ++i) {
      const int c = code(rng);
      raw.emplace_back(c % 2 + 1, c < 2 ? 1 : -1);
    }
    const Word w = free_reduce(raw);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] != w[i - 1].inverse());
    CHECK(free_reduce(w.letters()) == w);
  }
}

TEST_CASE("products, inverses, commutators and powers") {
  const Word u = parse("x1 x2");
  CHECK((u * u.inverse()).empty());
  CHECK(commutator(parse("x1"), parse("x2")) == parse("x1 x2 X1 X2"));
  CHECK(power(u, 3).size() == 6);
  CHECK(power(u, -2) == parse("X2 X1 X2 X1"));
  CHECK(power(u, 0).empty());
  CHECK(abelianization(parse("x1 x2 x2 X1 x3"), 3) == std::vector<std::int64_t>{0, 2, 1});
}

TEST_CASE("to_string and parse round trip") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const Word w = random_reduced_word(rng, 4, t % 15);
    CHECK(parse(to_string(w)) == w);
  }
  CHECK(to_string(Word{}) == "1");
  CHECK(to_string(parse("x1 X2")) == "x1 X2");
}

TEST_CASE("normalize_rank relabels by first occurrence") {
  const Word w = parse("x7 x9 X7 x9");
  const NormalizedWord n = normalize_rank(w);
  CHECK(n.word == parse("x1 x2 X1 x2"));
  CHECK(n.renaming.old_to_new == std::map<int, int>{{7, 1}, {9, 2}});
  CHECK(denormalize(n.word, n.renaming) == w);

  const NormalizedWord e = normalize_rank(Word{});
  CHECK(e.word.empty());
  CHECK(e.renaming.old_to_new.empty());

  const Word already = parse("x1 x2 X1");
  const NormalizedWord same = normalize_rank(already);
  CHECK(same.word == already);
  CHECK(same.renaming.old_to_new == std::map<int, int>{{1, 1}, {2, 2}});

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Word r = random_reduced_word(rng, 6, 12);
    const Word m = normalize_rank(r).word;
    CHECK(m.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(m[i].sign() == r[i].sign());
  }
}

TEST_CASE("code_length") {
  CHECK(code_length(Word{1, 2, 1, 2, 1, 2, 1, 2, 1, 2}) == 20);
  CHECK(code_length(Word{}) == 0);
  CHECK(code_length(Word{1, 2, 3, 4, 5}.with_rank(5)) == 20);
}
