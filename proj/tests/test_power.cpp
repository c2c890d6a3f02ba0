#include <doctest.h>

#include <random>

#include "fsg/generators.hpp"
#include "fsg/oracle.hpp"
#include "fsg/power.hpp"

using namespace fsg;

TEST_CASE("triviality depth") {
  CHECK(triviality_depth(parse("x1"), 1, 3) == 0);
  const Word c = parse("x1 x2 X1 X2");
  CHECK(triviality_depth(c, 2, 3) == 1);
  const Word cc = commutator(c, parse("x3 x4 X3 X4"));
  CHECK(triviality_depth(cc, 4, 3) == 2);
  CHECK(triviality_depth(Word{}, 2, 4) == 4);
}

TEST_CASE("power problem examples") {
  for (int d = 1; d <= 3; ++d) {
    CHECK(power_solve(parse("x1^6"), parse("x1^2"), 1, d) == PowerResult::exponent(3));
    CHECK_FALSE(power_solve(parse("x1"), parse("x2"), 2, d).found());
    CHECK(power_solve(Word{}, parse("x1"), 1, d) == PowerResult::exponent(0));
  }
  const Word c = parse("x1 x2 X1 X2");
  CHECK(power_solve(c * c, c, 2, 2) == PowerResult::exponent(2));
  CHECK(power_solve(c, c.inverse(), 2, 2) == PowerResult::exponent(-1));
  CHECK(power_solve(parse("x1"), parse("x1"), 1, 0) == PowerResult::exponent(1));
}

TEST_CASE("powers of random words are found") {
  MagnusOracle oracle(2);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const Word v = random_reduced_word(rng, 2, 1 + rng() % 6);
    const auto k = static_cast<std::int64_t>(rng() % 11) - 5;
    const Word u = power(v, k);
    const PowerResult p = power_solve(u, v, 2, 2);
    REQUIRE(p.found());
    CHECK(oracle.form(power(v, *p.k), 2) == oracle.form(u, 2));
  }
}

TEST_CASE("power answers agree with a bounded oracle search") {
  MagnusOracle oracle(2);
  const auto words = reduced_words(2, 4);
  for (int d = 1; d <= 2; ++d)
    for (const Word& u : words)
      for (const Word& v : words) {
        if (u.size() + v.size() > 6) continue;
        const PowerResult p = power_solve(u, v, 2, d);
        if (p.found()) {
          CHECK(oracle.form(power(v, *p.k), d) == oracle.form(u, d));
          continue;
        }
        for (std::int64_t k = -static_cast<std::int64_t>(u.size()); k <= static_cast<std::int64_t>(u.size()); ++k)
          CHECK(oracle.form(power(v, k), d) != oracle.form(u, d));
      }
}

TEST_CASE("Monte Carlo power problem agrees on easy instances") {
  std::mt19937_64 gen(8);
  Rng rng(8);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const Word v = random_reduced_word(gen, 2, 10);
    const Word u = power(v, 3);
    agree += power_solve(u, v, 2, 2, {Mode::monte_carlo, &rng, std::nullopt}) == PowerResult::exponent(3);
  }
  CHECK(agree == 100);
}

TEST_CASE("cyclic membership memoizes") {
  CyclicMembership m(parse("x1 x2"), 2, 2);
  CHECK(m.contains(parse("x1 x2 x1 x2")));
  CHECK(m.contains(parse("x1 x2 x1 x2")));
  CHECK(m.solver_calls() == 1);
  CHECK(m.exponent(parse("X2 X1")) == std::optional<std::int64_t>(-1));
  CHECK_FALSE(m.contains(parse("x2 x1")));
}
