#pragma once

// Slow reference implementations for cross-checking: iterated Magnus
// embedding normal forms, Fox derivatives, bounded conjugacy search.
//
// Depth 0 is the trivial group, depth 1 is ℤ^r, and a depth-k form is a pair
// (g, t) with g a depth-(k-1) form and t a finitely supported map from
// depth-(k-1) forms to ℤ^r, multiplied as (g,t)(g',t') = (gg', t + g·t').
// Forms are hash-consed per depth, so equal elements have equal ids.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fsg/words.hpp"

namespace fsg {

struct Form {
  int depth = 0;
  std::uint32_t id = 0;
  bool operator==(const Form&) const = default;
};

struct OracleLimits {
  std::size_t max_length = 64;
  int max_depth = 4;
};

class MagnusOracle {
 public:
  explicit MagnusOracle(int rank, OracleLimits limits = {});
  MagnusOracle(const MagnusOracle&) = delete;
  MagnusOracle& operator=(const MagnusOracle&) = delete;

  int rank() const { return rank_; }
  const OracleLimits& limits() const { return limits_; }

  /// Throws GuardError beyond the limits.
  Form form(const Word& w, int depth);
  Form identity(int depth);
  Form generator(Letter a, int depth);
  Form multiply(Form a, Form b);
  Form inverse(Form a);
  bool is_identity(Form a);
  bool trivial(const Word& w, int depth) { return is_identity(form(w, depth)); }

  /// Exponent vector of a depth-1 form.
  std::vector<std::int64_t> exponents(Form a);
  Form from_exponents(std::span<const std::int64_t> exponents);
  /// g of (g, t), a form one level down.
  Form base(Form a);
  /// t of (g, t), sorted by key id.
  std::vector<std::pair<Form, std::vector<std::int64_t>>> module_part(Form a);

  std::size_t size(int depth);

 private:
  using Id = std::uint32_t;
  struct Node {
    Id base = 0;
    std::vector<std::int64_t> data;  // depth 1: exponents; deeper: rows of (key, r entries)
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept;
  };
  struct Level {
    std::vector<Node> nodes;
    std::unordered_map<Node, Id, NodeHash> index;
    std::unordered_map<std::uint64_t, Id> products;
    std::unordered_map<Id, Id> inverses;
  };

  void check_depth(int depth) const;
  Id intern(int depth, Node node);
  Id identity_id(int depth);
  Id generator_id(Letter a, int depth);
  Id mul(int depth, Id a, Id b);
  Id inv(int depth, Id a);

  int rank_;
  OracleLimits limits_;
  std::vector<Level> levels_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

/// Element of ℤ[S_{r,depth}]: form ids with nonzero coefficients.
struct GroupRingElement {
  int depth = 0;
  std::map<std::uint32_t, std::int64_t> terms;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const GroupRingElement&) const = default;
};

/// ∂w/∂x_i with coefficients in ℤ[S_{r,depth}]:
/// a positive occurrence of x_i adds the prefix before it, a negative one subtracts the prefix through it.
GroupRingElement fox_derivative(MagnusOracle& oracle, const Word& w, int i, int depth);

/// Depth-1 group ring element as {exponent vector: coefficient}.
std::map<std::vector<std::int64_t>, std::int64_t> laurent_terms(MagnusOracle& oracle, const GroupRingElement& e);
/// e.g. "-1 + x2 - x1 x2^3 + x1 x2^2" for depth-1 elements.
std::string to_string(MagnusOracle& oracle, const GroupRingElement& e);

/// All Fox derivatives vanish at depth d-1. Decides w ∈ F^{(d)} for w ∈ F^{(d-1)}.
bool fox_triviality(MagnusOracle& oracle, const Word& w, int d);

enum class OracleAnswer { yes, no, unknown };

/// Yes if z·x·z⁻¹ = y for some reduced |z| <= bound; No if the abelianizations differ; else Unknown.
OracleAnswer oracle_conjugate(MagnusOracle& oracle, const Word& x, const Word& y, int d, std::size_t bound);

/// oracle_conjugate with the conjugate set of each x cached.
class ConjugacyOracle {
 public:
  ConjugacyOracle(MagnusOracle& oracle, int degree, std::size_t bound);
  OracleAnswer answer(const Word& x, const Word& y);

 private:
  const std::unordered_set<std::uint32_t>& conjugates(const Word& x);

  MagnusOracle& oracle_;
  int degree_;
  std::size_t bound_;
  std::map<Word, std::unordered_set<std::uint32_t>> cache_;
};

inline constexpr std::size_t kMaxConjugatorBound = 10;

}  // namespace fsg
