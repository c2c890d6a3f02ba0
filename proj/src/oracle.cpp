#include "fsg/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fsg/errors.hpp"

namespace fsg {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

std::size_t MagnusOracle::NodeHash::operator()(const Node& n) const noexcept {
  std::size_t h = std::hash<std::uint32_t>{}(n.base);
  for (std::int64_t v : n.data) h = h * 1000003u ^ std::hash<std::int64_t>{}(v);
  return h;
}

MagnusOracle::MagnusOracle(int rank, OracleLimits limits) : rank_(rank), limits_(limits) {
  if (rank < 1) throw std::invalid_argument("oracle rank must be positive");
  levels_.resize(static_cast<std::size_t>(limits_.max_depth) + 1);
  levels_[0].nodes.push_back({});
  levels_[0].index.emplace(Node{}, 0);
}

void MagnusOracle::check_depth(int depth) const {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (depth > limits_.max_depth) throw GuardError("oracle depth above its limit");
}

MagnusOracle::Id MagnusOracle::intern(int depth, Node node) {
  Level& level = levels_[depth];
  auto [it, inserted] = level.index.try_emplace(node, static_cast<Id>(level.nodes.size()));
  if (inserted) level.nodes.push_back(std::move(node));
  return it->second;
}

MagnusOracle::Id MagnusOracle::identity_id(int depth) {
  if (depth == 0) return 0;
  if (depth == 1) return intern(1, Node{0, std::vector<std::int64_t>(rank_, 0)});
  return intern(depth, Node{identity_id(depth - 1), {}});
}

MagnusOracle::Id MagnusOracle::generator_id(Letter a, int depth) {
  if (a.generator() < 1 || a.generator() > rank_) throw std::invalid_argument("generator above the oracle rank");
  if (depth == 0) return 0;
  if (a.sign() < 0) return inv(depth, generator_id(a.inverse(), depth));
  if (depth == 1) {
    std::vector<std::int64_t> e(rank_, 0);
    e[a.generator() - 1] = 1;
    return intern(1, Node{0, std::move(e)});
  }
  // x_i ↦ (x_i, t_i): the unit row e_i at the identity.
  std::vector<std::int64_t> row(rank_ + 1, 0);
  row[0] = identity_id(depth - 1);
  row[a.generator()] = 1;
  return intern(depth, Node{generator_id(a, depth - 1), std::move(row)});
}

MagnusOracle::Id MagnusOracle::mul(int depth, Id a, Id b) {
  if (depth == 0) return 0;
  Level& level = levels_[depth];
  if (auto it = level.products.find(pair_key(a, b)); it != level.products.end()) return it->second;

  const Node left = level.nodes[a];
  const Node right = level.nodes[b];
  Node out;
  if (depth == 1) {
    out.data = left.data;
    for (std::size_t j = 0; j < out.data.size(); ++j) out.data[j] += right.data[j];
  } else {
    out.base = mul(depth - 1, left.base, right.base);
    const std::size_t stride = rank_ + 1;
    // t + g·t': shift the keys of t' by g, then merge rows.
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t p = 0; p < left.data.size(); p += stride)
      rows.emplace_back(left.data.begin() + p, left.data.begin() + p + stride);
    for (std::size_t p = 0; p < right.data.size(); p += stride) {
      std::vector<std::int64_t> row(right.data.begin() + p, right.data.begin() + p + stride);
      row[0] = mul(depth - 1, left.base, static_cast<Id>(row[0]));
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x[0] < y[0]; });
    for (std::size_t i = 0; i < rows.size();) {
      std::vector<std::int64_t> sum = rows[i];
      std::size_t j = i + 1;
      for (; j < rows.size() && rows[j][0] == sum[0]; ++j)
        for (std::size_t c = 1; c < stride; ++c) sum[c] += rows[j][c];
      if (std::any_of(sum.begin() + 1, sum.end(), [](std::int64_t v) { return v != 0; }))
        out.data.insert(out.data.end(), sum.begin(), sum.end());
      i = j;
    }
  }
  const Id id = intern(depth, std::move(out));
  levels_[depth].products.emplace(pair_key(a, b), id);
  return id;
}

MagnusOracle::Id MagnusOracle::inv(int depth, Id a) {
  if (depth == 0) return 0;
  Level& level = levels_[depth];
  if (auto it = level.inverses.find(a); it != level.inverses.end()) return it->second;

  const Node node = level.nodes[a];
  Node out;
  if (depth == 1) {
    out.data = node.data;
    for (auto& v : out.data) v = -v;
  } else {
    // (g, t)⁻¹ = (g⁻¹, -g⁻¹·t)
    out.base = inv(depth - 1, node.base);
    const std::size_t stride = rank_ + 1;
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t p = 0; p < node.data.size(); p += stride) {
      std::vector<std::int64_t> row(node.data.begin() + p, node.data.begin() + p + stride);
      row[0] = mul(depth - 1, out.base, static_cast<Id>(row[0]));
      for (std::size_t c = 1; c < stride; ++c) row[c] = -row[c];
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x[0] < y[0]; });
    for (const auto& row : rows) out.data.insert(out.data.end(), row.begin(), row.end());
  }
  const Id id = intern(depth, std::move(out));
  levels_[depth].inverses.emplace(a, id);
  return id;
}

Form MagnusOracle::form(const Word& w, int depth) {
  check_depth(depth);
  if (w.size() > limits_.max_length) throw GuardError("word too long for the oracle");
  std::lock_guard lock(*mutex_);
  Id id = identity_id(depth);
  for (const Letter a : w) id = mul(depth, id, generator_id(a, depth));
  return {depth, id};
}

Form MagnusOracle::identity(int depth) {
  check_depth(depth);
  std::lock_guard lock(*mutex_);
  return {depth, identity_id(depth)};
}

Form MagnusOracle::generator(Letter a, int depth) {
  check_depth(depth);
  std::lock_guard lock(*mutex_);
  return {depth, generator_id(a, depth)};
}

Form MagnusOracle::multiply(Form a, Form b) {
  if (a.depth != b.depth) throw std::invalid_argument("forms of different depths");
  std::lock_guard lock(*mutex_);
  return {a.depth, mul(a.depth, a.id, b.id)};
}

Form MagnusOracle::inverse(Form a) {
  std::lock_guard lock(*mutex_);
  return {a.depth, inv(a.depth, a.id)};
}

bool MagnusOracle::is_identity(Form a) {
  std::lock_guard lock(*mutex_);
  return a.id == identity_id(a.depth);
}

std::vector<std::int64_t> MagnusOracle::exponents(Form a) {
  if (a.depth != 1) throw std::invalid_argument("exponent vectors live at depth 1");
  std::lock_guard lock(*mutex_);
  return levels_[1].nodes[a.id].data;
}

Form MagnusOracle::from_exponents(std::span<const std::int64_t> exponents) {
  if (exponents.size() != static_cast<std::size_t>(rank_)) throw std::invalid_argument("one exponent per generator");
  check_depth(1);
  std::lock_guard lock(*mutex_);
  return {1, intern(1, Node{0, std::vector<std::int64_t>(exponents.begin(), exponents.end())})};
}

Form MagnusOracle::base(Form a) {
  if (a.depth < 2) throw std::invalid_argument("base needs depth >= 2");
  std::lock_guard lock(*mutex_);
  return {a.depth - 1, levels_[a.depth].nodes[a.id].base};
}

std::vector<std::pair<Form, std::vector<std::int64_t>>> MagnusOracle::module_part(Form a) {
  if (a.depth < 2) throw std::invalid_argument("module part needs depth >= 2");
  std::lock_guard lock(*mutex_);
  const auto& data = levels_[a.depth].nodes[a.id].data;
  std::vector<std::pair<Form, std::vector<std::int64_t>>> out;
  for (std::size_t p = 0; p < data.size(); p += rank_ + 1)
    out.emplace_back(Form{a.depth - 1, static_cast<Id>(data[p])},
                     std::vector<std::int64_t>(data.begin() + p + 1, data.begin() + p + 1 + rank_));
  return out;
}

std::size_t MagnusOracle::size(int depth) {
  check_depth(depth);
  std::lock_guard lock(*mutex_);
  return levels_[depth].nodes.size();
}

GroupRingElement fox_derivative(MagnusOracle& oracle, const Word& w, int i, int depth) {
  if (i < 1 || i > oracle.rank()) throw std::invalid_argument("generator index out of range");
  if (w.size() > oracle.limits().max_length) throw GuardError("word too long for the oracle");
  GroupRingElement out{depth, {}};
  Form prefix = oracle.identity(depth);
  for (const Letter a : w) {
    const Form next = oracle.multiply(prefix, oracle.generator(a, depth));
    if (a.generator() == i) {
      if (a.sign() > 0)
        out.terms[prefix.id] += 1;
      else
        out.terms[next.id] -= 1;
    }
    prefix = next;
  }
  std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
  return out;
}

std::map<std::vector<std::int64_t>, std::int64_t> laurent_terms(MagnusOracle& oracle, const GroupRingElement& e) {
  if (e.depth != 1) throw std::invalid_argument("Laurent terms need depth 1");
  std::map<std::vector<std::int64_t>, std::int64_t> out;
  for (const auto& [id, c] : e.terms) out[oracle.exponents({1, id})] = c;
  return out;
}

std::string to_string(MagnusOracle& oracle, const GroupRingElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, c] : e.terms) {
    std::string monomial;
    if (e.depth == 1) {
      const auto ex = oracle.exponents({1, id});
      for (std::size_t j = 0; j < ex.size(); ++j) {
        if (ex[j] == 0) continue;
        if (!monomial.empty()) monomial += ' ';
        monomial += 'x' + std::to_string(j + 1);
        if (ex[j] != 1) monomial += '^' + std::to_string(ex[j]);
      }
    } else if (e.depth > 1) {
      monomial = "g" + std::to_string(id);
    }
    const std::int64_t magnitude = c < 0 ? -c : c;
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (monomial.empty())
      out << magnitude;
    else
      out << (magnitude == 1 ? "" : std::to_string(magnitude) + " ") << monomial;
    first = false;
  }
  return out.str();
}

bool fox_triviality(MagnusOracle& oracle, const Word& w, int d) {
  if (d < 1) throw std::invalid_argument("Fox triviality needs d >= 1");
  for (int i = 1; i <= oracle.rank(); ++i)
    if (!fox_derivative(oracle, w, i, d - 1).is_zero()) return false;
  return true;
}

OracleAnswer oracle_conjugate(MagnusOracle& oracle, const Word& x, const Word& y, int d, std::size_t bound) {
  ConjugacyOracle search(oracle, d, bound);
  return search.answer(x, y);
}

ConjugacyOracle::ConjugacyOracle(MagnusOracle& oracle, int degree, std::size_t bound)
    : oracle_(oracle), degree_(degree), bound_(bound) {
  if (bound > kMaxConjugatorBound) throw GuardError("conjugator bound above the oracle limit");
}

const std::unordered_set<std::uint32_t>& ConjugacyOracle::conjugates(const Word& x) {
  auto [it, inserted] = cache_.try_emplace(x);
  if (!inserted) return it->second;
  const Form fx = oracle_.form(x, degree_);
  auto& out = it->second;
  // Depth-first over reduced z, carrying the form of z.
  struct Frame {
    Form z;
    int last;  // signed letter value, 0 at the root
    std::size_t length;
  };
  std::vector<Frame> stack{{oracle_.identity(degree_), 0, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    out.insert(oracle_.multiply(oracle_.multiply(f.z, fx), oracle_.inverse(f.z)).id);
    if (f.length == bound_) continue;
    for (int g = 1; g <= oracle_.rank(); ++g)
      for (int s : {1, -1}) {
        const Letter a(g, s);
        if (a.value() == -f.last) continue;
        stack.push_back({oracle_.multiply(f.z, oracle_.generator(a, degree_)), a.value(), f.length + 1});
      }
  }
  return out;
}

OracleAnswer ConjugacyOracle::answer(const Word& x, const Word& y) {
  if (degree_ == 0) return OracleAnswer::yes;
  if (abelianization(x, oracle_.rank()) != abelianization(y, oracle_.rank())) return OracleAnswer::no;
  return conjugates(x).contains(oracle_.form(y, degree_).id) ? OracleAnswer::yes : OracleAnswer::unknown;
}

}  // namespace fsg
