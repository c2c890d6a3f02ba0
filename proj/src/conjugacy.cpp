#include "fsg/conjugacy.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "fsg/errors.hpp"

namespace fsg {

namespace {

// a ∈ ℤ·b
bool is_multiple(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  auto pivot = std::find_if(b.begin(), b.end(), [](std::int64_t v) { return v != 0; });
  if (pivot == b.end()) return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
  const std::size_t j = pivot - b.begin();
  if (a[j] % b[j] != 0) return false;
  const std::int64_t k = a[j] / b[j];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != k * b[i]) return false;
  return true;
}

Word letter_word(Letter a) { return Word(std::span<const Letter>(&a, 1)); }

// Flow on the ℤ-cover of the support, i.e. on Cay(S_{r,d-1}) near the traced
// paths. The edge y^k·rep(q) -> y^k·rep(q)·x_i is keyed (q, i, k).
using CoverFlow = std::map<std::tuple<Vertex, int, std::int64_t>, std::int64_t>;

void add_cover_flow(SchreierSupport& s, std::span<const Letter> letters, std::int64_t sign, CoverFlow& phi) {
  Vertex v = s.root();
  std::int64_t k = 0;
  for (const Letter a : letters) {
    const Vertex u = s.walk(v, a);
    const std::int64_t next = k + s.shift(v, a);
    if (a.sign() > 0)
      phi[{v, a.generator(), k}] += sign;
    else
      phi[{u, a.generator(), next}] -= sign;
    v = u;
    k = next;
  }
}

// c ∈ F^{(d-1)} with c·x'·c⁻¹ = y in S_{r,d}, given that x' and y have equal
// flows on the Schreier support. Over each ⟨y⟩-orbit of edges the difference
// of their Cayley flows has zero sum; its partial sums h solve
// (1 - y)·h = π_y - π_x', and h is realized as a product of loops.
Word correction(SchreierSupport& s, std::span<const Letter> x_prime) {
  const Word& y = s.base_word();
  CoverFlow phi;
  add_cover_flow(s, y.letters(), 1, phi);
  add_cover_flow(s, x_prime, -1, phi);

  Word c;
  auto it = phi.begin();
  while (it != phi.end()) {
    const Vertex q = std::get<0>(it->first);
    const int gen = std::get<1>(it->first);
    const Letter x_gen(gen, 1);
    const Vertex u = s.walk(q, x_gen);
    const std::int64_t m = s.shift(q, x_gen);
    std::int64_t running = 0;
    for (; it != phi.end() && std::get<0>(it->first) == q && std::get<1>(it->first) == gen; ++it) {
      running += it->second;
      const std::int64_t k = std::get<2>(it->first);
      auto next = std::next(it);
      const bool same_orbit = next != phi.end() && std::get<0>(next->first) == q && std::get<1>(next->first) == gen;
      const std::int64_t stop = same_orbit ? std::get<2>(next->first) : k + 1;
      if (running == 0) continue;
      if (!same_orbit) throw FoldConflict("flows differ on a ⟨y⟩-orbit of Schreier edges");
      for (std::int64_t j = k; j < stop; ++j) {
        const Word loop = power(y, j) * s.representative(q) * letter_word(x_gen) *
                          s.representative(u).inverse() * power(y, -(j + m));
        c = c * power(loop, running);
      }
    }
  }
  return c;
}

ConjugacyResult attempt(const Word& x, const Word& y, int rank, int degree, const SolveOptions& solve,
                        const ConjugacyOptions& options) {
  SchreierSupport s(y, rank, degree, solve, options.abelian_prefilter);
  const auto path = s.trace(y);
  const EdgeFlow pi_y = s.flow(y);

  std::size_t i = 0;
  for (; i < y.size(); ++i) {
    const Letter a = y[i];
    const Vertex origin = a.sign() > 0 ? path[i] : path[i + 1];
    if (pi_y.contains({origin, a.generator()})) break;
  }
  // π_y ≡ 0 means y = 1, already excluded unless a Monte Carlo answer was wrong.
  if (i == y.size()) return {};

  for (std::size_t j = 0; j <= x.size(); ++j) {
    Vertex start = path[i];
    for (std::size_t t = j; t-- > 0;) start = s.walk(start, x[t].inverse());
    if (s.flow(x, start) != pi_y) continue;

    const Word gamma = y.prefix(i) * x.prefix(j).inverse();
    if (!options.witness) return {true, std::nullopt};
    std::vector<Letter> x_prime(gamma.begin(), gamma.end());
    x_prime.insert(x_prime.end(), x.begin(), x.end());
    const Word gamma_inv = gamma.inverse();
    x_prime.insert(x_prime.end(), gamma_inv.begin(), gamma_inv.end());
    const Word z = correction(s, x_prime) * gamma;
    if (options.verify_witness) {
      const Word check = z * x * z.inverse() * y.inverse();
      if (!word_problem(check, rank, degree, solve.mode, solve.rng)) {
        if (solve.mode == Mode::deterministic) throw std::logic_error("conjugator check failed");
        throw FoldConflict("Monte Carlo conjugator failed its check");
      }
    }
    return {true, z};
  }
  return {};
}

}  // namespace

SchreierSupport::SchreierSupport(Word y, int rank, int degree, SolveOptions options, bool abelian_prefilter)
    : y_(std::move(y)),
      rank_(rank),
      degree_(degree),
      prefilter_(abelian_prefilter),
      y_abelian_(abelianization(y_, rank)),
      membership_(y_, rank, degree - 1, options) {
  if (degree < 1) throw std::invalid_argument("Schreier supports need degree >= 1");
  reps_.emplace_back();
  rep_abelian_.emplace_back(y_abelian_.size(), 0);
}

void SchreierSupport::connect(Vertex v, Letter a, Vertex u, std::int64_t shift) {
  auto back = arcs_.find(key(u, a.inverse()));
  if (back != arcs_.end() && back->second.target != v) throw FoldConflict("membership answers do not fold");
  arcs_[key(v, a)] = {u, shift};
  arcs_[key(u, a.inverse())] = {v, -shift};
}

Vertex SchreierSupport::walk(Vertex v, Letter a) {
  if (auto it = arcs_.find(key(v, a)); it != arcs_.end()) return it->second.target;
  const Word p = reps_[v] * letter_word(a);
  std::vector<std::int64_t> ab = rep_abelian_[v];
  ab[a.generator() - 1] += a.sign();

  std::vector<std::int64_t> diff(ab.size());
  for (Vertex q = 0; q < reps_.size(); ++q) {
    if (prefilter_ && degree_ >= 2) {
      // Cheap necessary condition: the abelian images differ by a multiple of y's.
      for (std::size_t j = 0; j < ab.size(); ++j) diff[j] = ab[j] - rep_abelian_[q][j];
      if (!is_multiple(diff, y_abelian_)) continue;
    }
    if (auto k = membership_.exponent(p * reps_[q].inverse())) {
      connect(v, a, q, *k);
      return q;
    }
  }
  const auto u = static_cast<Vertex>(reps_.size());
  reps_.push_back(p);
  rep_abelian_.push_back(std::move(ab));
  connect(v, a, u, 0);
  return u;
}

std::int64_t SchreierSupport::shift(Vertex v, Letter a) {
  walk(v, a);
  return arcs_.at(key(v, a)).shift;
}

std::vector<Vertex> SchreierSupport::trace(std::span<const Letter> w, Vertex from) {
  std::vector<Vertex> out{from};
  out.reserve(w.size() + 1);
  for (const Letter a : w) out.push_back(walk(out.back(), a));
  return out;
}

EdgeFlow SchreierSupport::flow(std::span<const Letter> w, Vertex from) {
  EdgeFlow f;
  Vertex v = from;
  for (const Letter a : w) {
    const Vertex u = walk(v, a);
    if (a.sign() > 0)
      f[{v, a.generator()}] += 1;
    else
      f[{u, a.generator()}] -= 1;
    v = u;
  }
  std::erase_if(f, [](const auto& entry) { return entry.second == 0; });
  return f;
}

XDigraph SchreierSupport::graph() const {
  std::vector<Edge> edges;
  for (const auto& [k, arc] : arcs_) {
    const auto value = static_cast<std::int32_t>(static_cast<std::uint32_t>(k));
    if (value > 0) edges.push_back({static_cast<Vertex>(k >> 32), arc.target, value});
  }
  std::sort(edges.begin(), edges.end());
  return XDigraph(reps_.size(), 0, std::move(edges));
}

SchreierSupport schreier_support(const Word& y, std::span<const Word> extra, int rank, int degree,
                                 const SolveOptions& options, bool abelian_prefilter) {
  SchreierSupport s(y, rank, degree, options, abelian_prefilter);
  s.trace(y);
  for (const Word& w : extra) s.trace(w);
  return s;
}

ConjugacyResult conjugacy_solve(const Word& x, const Word& y, int rank, int degree,
                                const ConjugacyOptions& options) {
  if (rank < 1 || degree < 0) throw std::invalid_argument("need rank >= 1 and degree >= 0");
  if (x.rank() > rank || y.rank() > rank) throw std::invalid_argument("word uses a generator above the rank");
  if (x.size() + y.size() >= kMaxWordLength) throw GuardError("inputs longer than 2^20 letters");
  if (degree == 0) return {true, Word{}};

  SolveOptions solve{options.mode, options.rng, options.cube_bound};
  if (options.mode == Mode::monte_carlo) {
    if (options.rng == nullptr) throw std::invalid_argument("Monte Carlo mode needs a random source");
    solve.cube_bound = options.cube_bound.value_or(cube_bound_for(x.size() + y.size(), 6, 25));
  }

  const bool x_trivial = word_problem(x, rank, degree, solve.mode, solve.rng, solve.cube_bound);
  const bool y_trivial = word_problem(y, rank, degree, solve.mode, solve.rng, solve.cube_bound);
  if (x_trivial && y_trivial) return {true, Word{}};
  if (x_trivial || y_trivial) return {};
  // Abelianization is a conjugation invariant, and a complete one in S_{r,1}.
  if (abelianization(x, rank) != abelianization(y, rank)) return {};
  if (degree == 1) return {true, Word{}};

  for (int k = 1;; ++k) {
    try {
      return attempt(x, y, rank, degree, solve, options);
    } catch (const FoldConflict&) {
      if (options.mode == Mode::deterministic || k >= options.attempts) throw;
    }
  }
}

}  // namespace fsg
