#include "fsg/words.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "fsg/errors.hpp"

namespace fsg {

namespace {

int max_generator(std::span<const Letter> letters) {
  int r = 0;
  for (const Letter& l : letters) r = std::max(r, l.generator());
  return r;
}

// Appends one letter to a reduced sequence, cancelling against the tail.
void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back().value() == -l.value())
    out.pop_back();
  else
    out.push_back(l);
}

std::int64_t parse_int(std::string_view s, std::string_view token) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("malformed integer in token '" + std::string(token) + "'");
  return v;
}

constexpr std::int64_t kMaxExponent = 1 << 20;

}  // namespace

Word::Word(std::span<const Letter> letters, int rank_hint) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.value() == 0) throw ParseError("generator index 0");
    push_reduced(letters_, l);
  }
  rank_ = std::max(rank_hint, max_generator(letters));
}

Word::Word(std::initializer_list<int> signed_letters, int rank_hint) {
  std::vector<Letter> tmp;
  tmp.reserve(signed_letters.size());
  for (int v : signed_letters) tmp.push_back(Letter::from_signed(v));
  *this = Word(tmp, rank_hint);
}

Word Word::with_rank(int rank) const {
  Word w = *this;
  w.rank_ = std::max(rank, max_generator(letters_));
  return w;
}

Word Word::prefix(std::size_t length) const {
  Word w;
  w.letters_.assign(letters_.begin(), letters_.begin() + std::min(length, letters_.size()));
  w.rank_ = rank_;
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  w.rank_ = rank_;
  return w;
}

Word operator*(const Word& u, const Word& v) {
  std::vector<Letter> out(u.begin(), u.end());
  for (const Letter& l : v) push_reduced(out, l);
  return Word(out, std::max(u.rank(), v.rank()));
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

Word power(const Word& u, std::int64_t k) {
  const Word base = k < 0 ? u.inverse() : u;
  Word result = Word().with_rank(u.rank());
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) result = result * base;
  return result;
}

std::vector<std::int64_t> abelianization(const Word& w, int rank) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(std::max(rank, w.rank())), 0);
  for (const Letter& l : w) v[l.generator() - 1] += l.sign();
  return v;
}

Word free_reduce(std::span<const Letter> letters, int rank_hint) { return Word(letters, rank_hint); }

Word parse(std::string_view text, int rank) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    std::string_view body = token;
    std::int64_t exponent = 1;
    if (auto caret = body.find('^'); caret != std::string_view::npos) {
      exponent = parse_int(body.substr(caret + 1), token);
      body = body.substr(0, caret);
      if (exponent > kMaxExponent || exponent < -kMaxExponent)
        throw ParseError("exponent out of range in token '" + token + "'");
    }
    if (body.empty()) throw ParseError("empty letter in token '" + token + "'");

    std::vector<Letter> run;
    const bool indexed = (body[0] == 'x' || body[0] == 'X') && body.size() > 1 &&
                         std::isdigit(static_cast<unsigned char>(body[1]));
    if (indexed) {
      const std::int64_t index = parse_int(body.substr(1), token);
      if (index <= 0) throw ParseError("generator index must be positive in token '" + token + "'");
      if (index > std::numeric_limits<int>::max() / 2) throw ParseError("generator index too large");
      run.emplace_back(static_cast<int>(index), body[0] == 'X' ? -1 : 1);
    } else {
      for (char c : body) {
        if (c >= 'a' && c <= 'z')
          run.emplace_back(c - 'a' + 1, 1);
        else if (c >= 'A' && c <= 'Z')
          run.emplace_back(c - 'A' + 1, -1);
        else
          throw ParseError("malformed token '" + token + "'");
      }
      if (run.size() > 1 && exponent != 1)
        throw ParseError("exponent on a multi-letter compact token '" + token + "'");
    }

    for (const Letter& l : run)
      if (rank > 0 && l.generator() > rank)
        throw ParseError("generator x" + std::to_string(l.generator()) + " exceeds rank " +
                         std::to_string(rank));

    const std::int64_t reps = exponent < 0 ? -exponent : exponent;
    for (std::int64_t i = 0; i < reps; ++i)
      for (const Letter& l : run) letters.push_back(exponent < 0 ? l.inverse() : l);
  }
  return Word(letters, rank);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].sign() > 0 ? 'x' : 'X';
    out += std::to_string(w[i].generator());
  }
  return out;
}

NormalizedWord normalize_rank(const Word& w) {
  NormalizedWord result;
  std::vector<Letter> letters;
  letters.reserve(w.size());
  int next = 1;
  for (const Letter& l : w) {
    auto [it, inserted] = result.renaming.old_to_new.try_emplace(l.generator(), next);
    if (inserted) ++next;
    letters.emplace_back(it->second, l.sign());
  }
  result.word = Word(letters, next - 1);
  return result;
}

Word denormalize(const Word& w, const Renaming& renaming) {
  std::map<int, int> back;
  for (auto [from, to] : renaming.old_to_new) back[to] = from;
  std::vector<Letter> letters;
  letters.reserve(w.size());
  int rank = 0;
  for (const Letter& l : w) {
    auto it = back.find(l.generator());
    const int g = it == back.end() ? l.generator() : it->second;
    rank = std::max(rank, g);
    letters.emplace_back(g, l.sign());
  }
  return Word(letters, rank);
}

std::uint64_t code_length(const Word& w) {
  const auto r = static_cast<std::uint64_t>(std::max(w.rank(), 1));
  const std::uint64_t ceil_log2 = r <= 1 ? 0 : std::bit_width(r - 1);
  return static_cast<std::uint64_t>(w.size()) * (ceil_log2 + 1);
}

}  // namespace fsg
