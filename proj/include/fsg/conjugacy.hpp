#pragma once

// Conjugacy in S_{r,d} via flows on the Schreier graph of ⟨y⟩ in S_{r,d-1}.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsg/power.hpp"

namespace fsg {

/// Flow on the positive edges of a Schreier support, keyed by (origin, generator).
/// Zero values are never stored, so equality is the union-of-supports comparison.
using EdgeFlow = std::map<std::pair<Vertex, int>, std::int64_t>;

/// The part of Sch_{d-1}(y) reached so far. Vertices are right cosets ⟨y⟩g,
/// each with a representative word; vertex 0 is ⟨y⟩. Every directed edge
/// v --a--> u stores the shift m with rep(v)·a = y^m·rep(u) in S_{r,d-1}.
class SchreierSupport {
 public:
  /// `degree` is d; cosets are decided by membership in ⟨y⟩ at depth d-1 >= 0.
  /// The abelian prefilter skips membership queries whose abelian images
  /// already rule them out.
  SchreierSupport(Word y, int rank, int degree, SolveOptions options = {}, bool abelian_prefilter = true);

  const Word& base_word() const { return y_; }
  int degree() const { return degree_; }
  Vertex root() const { return 0; }
  std::size_t vertex_count() const { return reps_.size(); }
  const Word& representative(Vertex v) const { return reps_[v]; }

  /// Target of the a-edge at v, discovering it through membership queries if new.
  /// Throws FoldConflict if the answers contradict earlier ones.
  Vertex walk(Vertex v, Letter a);
  /// Shift m of the edge v --a--> walk(v, a).
  std::int64_t shift(Vertex v, Letter a);

  /// Vertices visited by the letters of w starting at `from` (size |w|+1).
  std::vector<Vertex> trace(std::span<const Letter> w, Vertex from = 0);
  std::vector<Vertex> trace(const Word& w, Vertex from = 0) { return trace(w.letters(), from); }
  /// π of the path spelled by w from `from`.
  EdgeFlow flow(std::span<const Letter> w, Vertex from = 0);
  EdgeFlow flow(const Word& w, Vertex from = 0) { return flow(w.letters(), from); }

  XDigraph graph() const;
  std::size_t membership_queries() const { return membership_.solver_calls(); }

 private:
  struct Arc {
    Vertex target;
    std::int64_t shift;
  };
  static std::uint64_t key(Vertex v, Letter a) {
    return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(a.value());
  }
  void connect(Vertex v, Letter a, Vertex u, std::int64_t shift);

  Word y_;
  int rank_;
  int degree_;
  bool prefilter_;
  std::vector<std::int64_t> y_abelian_;
  CyclicMembership membership_;
  std::vector<Word> reps_;
  std::vector<std::vector<std::int64_t>> rep_abelian_;
  std::unordered_map<std::uint64_t, Arc> arcs_;
};

/// Support of the traces of y and every word of `extra` in Sch_{d-1}(y).
SchreierSupport schreier_support(const Word& y, std::span<const Word> extra, int rank, int degree,
                                 const SolveOptions& options = {}, bool abelian_prefilter = true);

struct ConjugacyOptions {
  Mode mode = Mode::deterministic;
  Rng* rng = nullptr;
  /// Monte Carlo default: 25(|x|+|y|)^6.
  std::optional<std::uint64_t> cube_bound;
  bool witness = true;
  /// Re-check z·x·z⁻¹·y⁻¹ = 1 with the word problem before answering.
  bool verify_witness = true;
  /// Monte Carlo attempts before an inconsistency is surfaced.
  int attempts = 3;
  bool abelian_prefilter = true;
};

struct ConjugacyResult {
  bool conjugate = false;
  /// z with z·x·z⁻¹ = y in S_{r,d}, when requested.
  std::optional<Word> witness;
};

ConjugacyResult conjugacy_solve(const Word& x, const Word& y, int rank, int degree,
                                const ConjugacyOptions& options = {});

}  // namespace fsg
