// fsg: word, power and conjugacy problems in free solvable groups S_{r,d}.
//
// Exit status: 0 positive answer, 1 negative, 2 usage error, 3 guard tripped.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsg/bench.hpp"
#include "fsg/conjugacy.hpp"
#include "fsg/errors.hpp"
#include "fsg/power.hpp"
#include "selftest.hpp"

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

enum Exit { positive = 0, negative = 1, usage = 2, guard = 3 };

struct RunConfig {
  int rank = 0;  // 0: largest generator in the inputs
  int degree = 2;
  std::string mode = "det";
  std::optional<std::uint64_t> seed;
  std::optional<int> cube_exp;
  int trials = 1;
  bool json = false;
  std::size_t max_len = fsg::kMaxWordLength - 1;
};

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--rank,-r", c.rank, "Rank r (default: largest generator used)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--degree,-d", c.degree, "Degree d of S_{r,d}")->check(CLI::NonNegativeNumber);
  cmd->add_option("--mode,-m", c.mode, "det or mc")->check(CLI::IsMember({"det", "mc"}));
  cmd->add_option("--seed,-s", c.seed, "Random seed (default: OS entropy)");
  cmd->add_option("--cube-exp", c.cube_exp, "Exponent of the Monte Carlo cube bound")->check(CLI::PositiveNumber);
  cmd->add_option("--trials,-t", c.trials, "Independent Monte Carlo runs")->check(CLI::PositiveNumber);
  cmd->add_flag("--json", c.json, "Print a JSON report");
  cmd->add_option("--max-len", c.max_len, "Reject inputs longer than this");
}

fsg::Mode mode_of(const RunConfig& c) { return c.mode == "mc" ? fsg::Mode::monte_carlo : fsg::Mode::deterministic; }

std::uint64_t seed_of(const RunConfig& c) {
  if (c.seed) return *c.seed;
  std::random_device dev;
  return (std::uint64_t{dev()} << 32) | dev();
}

struct Inputs {
  std::vector<fsg::Word> words;
  int rank = 1;
};

Inputs read_inputs(const std::vector<std::string>& texts, const RunConfig& c) {
  Inputs in;
  for (const auto& t : texts) in.words.push_back(fsg::parse(t, c.rank));
  in.rank = c.rank;
  if (in.rank == 0)
    for (const auto& w : in.words) in.rank = std::max(in.rank, w.rank());
  in.rank = std::max(in.rank, 1);
  for (const auto& w : in.words)
    if (w.size() > c.max_len) throw fsg::GuardError("input longer than --max-len");
  return in;
}

json base_report(const std::string& problem, const std::vector<std::string>& texts, const RunConfig& c, int rank,
                 std::uint64_t seed) {
  json r;
  r["problem"] = problem;
  r["inputs"] = texts;
  r["mode"] = c.mode;
  r["seed"] = seed;
  r["degree"] = c.degree;
  r["rank"] = rank;
  return r;
}

int emit(json report, bool as_json, Clock::time_point start, const std::string& text) {
  report["elapsed_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (as_json)
    std::cout << report.dump() << '\n';
  else
    std::cout << text << "\n(" << report["mode"].get<std::string>() << ", seed " << report["seed"].get<std::uint64_t>()
              << ")\n";
  return report["answer"].get<bool>() ? positive : negative;
}

int cmd_wp(const std::string& w_text, const RunConfig& c) {
  const auto start = Clock::now();
  const Inputs in = read_inputs({w_text}, c);
  const std::uint64_t seed = seed_of(c);
  fsg::Rng rng(seed);
  const fsg::Word& w = in.words[0];
  std::optional<std::uint64_t> bound;
  if (c.cube_exp) bound = fsg::cube_bound_for(std::max<std::size_t>(w.size(), 1), *c.cube_exp);
  // A false answer is always correct, so repeated trials are combined by AND.
  bool answer = true;
  const int runs = mode_of(c) == fsg::Mode::monte_carlo ? c.trials : 1;
  for (int t = 0; t < runs && answer; ++t) answer = fsg::word_problem(w, in.rank, c.degree, mode_of(c), &rng, bound);
  json r = base_report("wp", {w_text}, c, in.rank, seed);
  r["answer"] = answer;
  return emit(r, c.json, start, answer ? "trivial: true" : "trivial: false");
}

int cmd_pow(const std::string& u_text, const std::string& v_text, const RunConfig& c) {
  const auto start = Clock::now();
  const Inputs in = read_inputs({u_text, v_text}, c);
  const std::uint64_t seed = seed_of(c);
  fsg::Rng rng(seed);
  const fsg::Word& u = in.words[0];
  const fsg::Word& v = in.words[1];
  fsg::SolveOptions o{mode_of(c), &rng, std::nullopt};
  if (c.cube_exp) o.cube_bound = fsg::cube_bound_for(u.size() + v.size(), *c.cube_exp, 9);
  // Majority vote over trials; Monte Carlo errors go both ways here.
  std::map<std::optional<std::int64_t>, int> votes;
  const int runs = o.mode == fsg::Mode::monte_carlo ? c.trials : 1;
  for (int t = 0; t < runs; ++t) ++votes[fsg::power_solve(u, v, in.rank, c.degree, o).k];
  auto best = std::max_element(votes.begin(), votes.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  const std::optional<std::int64_t> k = best->first;
  json r = base_report("pow", {u_text, v_text}, c, in.rank, seed);
  r["answer"] = k.has_value();
  if (k) r["k"] = *k;
  return emit(r, c.json, start, k ? "k = " + std::to_string(*k) : "fail");
}

int cmd_conj(const std::string& x_text, const std::string& y_text, const RunConfig& c) {
  const auto start = Clock::now();
  const Inputs in = read_inputs({x_text, y_text}, c);
  const std::uint64_t seed = seed_of(c);
  fsg::Rng rng(seed);
  fsg::ConjugacyOptions o;
  o.mode = mode_of(c);
  o.rng = &rng;
  const fsg::Word& x = in.words[0];
  const fsg::Word& y = in.words[1];
  if (c.cube_exp) o.cube_bound = fsg::cube_bound_for(x.size() + y.size(), *c.cube_exp, 25);
  std::optional<fsg::ConjugacyResult> result;
  int yes = 0;
  const int runs = o.mode == fsg::Mode::monte_carlo ? c.trials : 1;
  for (int t = 0; t < runs; ++t) {
    auto res = fsg::conjugacy_solve(x, y, in.rank, c.degree, o);
    if (res.conjugate) {
      ++yes;
      if (!result) result = res;
    }
  }
  const bool answer = 2 * yes > runs;
  json r = base_report("conj", {x_text, y_text}, c, in.rank, seed);
  r["answer"] = answer;
  std::string text = answer ? "conjugate: yes" : "conjugate: no";
  if (answer && result->witness) {
    r["witness"] = fsg::to_string(*result->witness);
    text += "\nwitness z = " + fsg::to_string(*result->witness);
  }
  return emit(r, c.json, start, text);
}

std::vector<std::size_t> default_sizes(fsg::Problem p) {
  std::vector<std::size_t> out;
  const int lo = p == fsg::Problem::conj ? 4 : 10;
  const int hi = p == fsg::Problem::conj ? 9 : 16;
  for (int e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  return out;
}

int cmd_bench(const std::string& problem, std::vector<std::size_t> sizes, bool hard, bool no_prefilter, bool trials_given,
              const RunConfig& c) {
  fsg::BenchConfig b;
  b.problem = fsg::problem_from_string(problem);
  b.mode = mode_of(c);
  b.rank = c.rank == 0 ? 2 : c.rank;
  b.degree = c.degree;
  b.sizes = sizes.empty() ? default_sizes(b.problem) : std::move(sizes);
  b.trials = trials_given ? c.trials : 5;
  b.seed = seed_of(c);
  b.cube_exponent = c.cube_exp;
  b.hard_instances = hard;
  b.abelian_prefilter = !no_prefilter;
  const fsg::BenchReport report = fsg::run_bench(b);

  if (c.json) {
    json rows = json::array();
    for (const auto& row : report.rows) {
      json j{{"n", row.n}, {"median_ms", row.median_ms}};
      if (row.doubling_log2) j["doubling_log2"] = *row.doubling_log2;
      rows.push_back(j);
    }
    json r{{"problem", "bench"}, {"bench", problem}, {"mode", c.mode}, {"seed", b.seed}, {"degree", b.degree},
           {"rank", b.rank}, {"trials", b.trials}, {"rows", rows}, {"fitted_exponent", report.fitted_exponent}};
    std::cout << r.dump(2) << '\n';
    return positive;
  }
  std::cout << "bench " << problem << " mode=" << c.mode << " r=" << b.rank << " d=" << b.degree
            << " trials=" << b.trials << " seed=" << b.seed << "\n";
  std::cout << "        n     median_ms   log2(t/t_prev)\n";
  for (const auto& row : report.rows) {
    char line[96];
    std::snprintf(line, sizeof line, "%9zu  %12.4f", row.n, row.median_ms);
    std::cout << line;
    if (row.doubling_log2) {
      std::snprintf(line, sizeof line, "   %8.3f", *row.doubling_log2);
      std::cout << line;
    }
    std::cout << '\n';
  }
  std::cout << "fitted exponent: " << report.fitted_exponent << '\n';
  return positive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word, power and conjugacy problems in free solvable groups"};
  app.require_subcommand(1);
  RunConfig c;

  std::string a, b;
  auto* wp = app.add_subcommand("wp", "Is w = 1 in S_{r,d}?");
  wp->add_option("w", a, "Word, e.g. \"x1 x2 X1 X2\"")->required();
  add_common(wp, c);

  auto* pw = app.add_subcommand("pow", "Find k with u = v^k in S_{r,d}");
  pw->add_option("u", a)->required();
  pw->add_option("v", b)->required();
  add_common(pw, c);

  auto* cj = app.add_subcommand("conj", "Are x and y conjugate in S_{r,d}?");
  cj->add_option("x", a)->required();
  cj->add_option("y", b)->required();
  add_common(cj, c);

  std::string problem = "wp";
  std::vector<std::size_t> sizes;
  bool hard = false;
  bool no_prefilter = false;
  auto* bench = app.add_subcommand("bench", "Median times and doubling ratios");
  bench->add_option("problem", problem, "wp, pow or conj")->check(CLI::IsMember({"wp", "pow", "conj"}));
  bench->add_option("--sizes", sizes, "Ascending input sizes")->delimiter(',');
  bench->add_flag("--hard", hard, "Slow-path instances (trivial words, non-powers, non-conjugates)");
  bench->add_flag("--no-prefilter", no_prefilter, "conj: query membership for every coset candidate");
  add_common(bench, c);

  auto* self = app.add_subcommand("selftest", "Cross-check the solvers against the oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : usage;
  }
  if (c.trials < 1) return usage;

  try {
    if (*wp) return cmd_wp(a, c);
    if (*pw) return cmd_pow(a, b, c);
    if (*cj) return cmd_conj(a, b, c);
    if (*bench) return cmd_bench(problem, sizes, hard, no_prefilter, bench->count("--trials") > 0, c);
    if (*self) return run_selftest(std::cout) ? positive : negative;
  } catch (const fsg::ParseError& e) {
    std::cerr << "fsg: " << e.what() << '\n';
    return usage;
  } catch (const fsg::GuardError& e) {
    std::cerr << "fsg: guard: " << e.what() << '\n';
    return guard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fsg: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "fsg: internal error: " << e.what() << '\n';
    return guard;
  }
  return usage;
}
