#include "selftest.hpp"

#include <random>
#include <string>

#include "fsg/conjugacy.hpp"
#include "fsg/generators.hpp"
#include "fsg/oracle.hpp"
#include "fsg/power.hpp"

namespace {

using namespace fsg;

bool report(std::ostream& out, const std::string& name, long checked, long mismatches) {
  out << (mismatches == 0 ? "ok   " : "FAIL ") << name << ": " << checked << " checked, " << mismatches
      << " mismatches\n";
  return mismatches == 0;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  MagnusOracle oracle(2);
  bool ok = true;

  long checked = 0, bad = 0;
  for (int d = 1; d <= 2; ++d)
    for_each_reduced_word(2, 7, [&](const Word& w) {
      ++checked;
      bad += word_problem(w, 2, d) != oracle.trivial(w, d);
    });
  ok &= report(out, "word problem vs Magnus forms (|w| <= 7, d <= 2)", checked, bad);

  checked = bad = 0;
  for (int d = 1; d <= 2; ++d)
    for_each_reduced_word(2, 7, [&](const Word& w) {
      if (!oracle.trivial(w, d - 1)) return;
      ++checked;
      bad += fox_triviality(oracle, w, d) != oracle.trivial(w, d);
    });
  ok &= report(out, "Fox derivatives vs Magnus forms", checked, bad);

  std::mt19937_64 rng(2024);
  checked = bad = 0;
  for (int t = 0; t < 200; ++t) {
    const Word v = random_reduced_word(rng, 2, 1 + rng() % 6);
    const auto k = static_cast<std::int64_t>(rng() % 11) - 5;
    const Word u = power(v, k);
    const PowerResult p = power_solve(u, v, 2, 2);
    ++checked;
    bad += !p.found() || !oracle.trivial(power(v, *p.k) * u.inverse(), 2);
  }
  ok &= report(out, "power problem on u = v^k", checked, bad);

  MagnusOracle wide(2, {4096, 4});
  checked = bad = 0;
  for (int t = 0; t < 100; ++t) {
    const Word x = random_reduced_word(rng, 2, 1 + rng() % 5);
    const Word z = random_reduced_word(rng, 2, rng() % 6);
    const Word y = z * x * z.inverse();
    const ConjugacyResult c = conjugacy_solve(x, y, 2, 2);
    ++checked;
    bad += !c.conjugate || !wide.trivial(*c.witness * x * c.witness->inverse() * y.inverse(), 2);
  }
  ok &= report(out, "conjugacy witnesses on y = z x z^-1", checked, bad);
  return ok;
}
