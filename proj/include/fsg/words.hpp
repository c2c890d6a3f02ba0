#pragma once

// Words over X_r^{±1}: letters, free reduction, parsing and rank relabeling.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsg {

/// A letter x_i^{±1}, stored as the signed index ±i.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign) : value_(sign < 0 ? -generator : generator) {}

  static constexpr Letter from_signed(int value) {
    Letter l;
    l.value_ = value;
    return l;
  }

  constexpr int generator() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : 1; }
  constexpr int value() const { return value_; }
  constexpr Letter inverse() const { return from_signed(-value_); }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  int value_ = 1;
};

/// A freely reduced word. Every constructor reduces its input.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters, int rank_hint = 0);
  Word(std::initializer_list<int> signed_letters, int rank_hint = 0);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  std::span<const Letter> letters() const { return letters_; }

  /// Declared rank r; at least the largest generator index that occurs.
  int rank() const { return rank_; }
  Word with_rank(int rank) const;

  /// Initial segment w_j of length j.
  Word prefix(std::size_t length) const;
  Word inverse() const;

  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  auto operator<=>(const Word& other) const { return letters_ <=> other.letters_; }

 private:
  std::vector<Letter> letters_;
  int rank_ = 0;
};

/// Product u·v, freely reduced.
Word operator*(const Word& u, const Word& v);

/// [u,v] = u v u^{-1} v^{-1}.
Word commutator(const Word& u, const Word& v);

/// u^k for any integer k.
Word power(const Word& u, std::int64_t k);

/// Exponent-sum vector of length max(rank, largest generator).
std::vector<std::int64_t> abelianization(const Word& w, int rank);

/// Unique freely reduced form of an arbitrary letter sequence.
Word free_reduce(std::span<const Letter> letters, int rank_hint = 0);

/// Parses whitespace-separated tokens: x3, X2 (inverse), x1^-3, compact a..z/A..Z, or 1 for ε.
/// Throws ParseError on malformed tokens, index 0, or an index above `rank` when rank > 0.
Word parse(std::string_view text, int rank = 0);

/// Canonical text form, e.g. "x1 x2 X1 X2"; "1" for ε.
std::string to_string(const Word& w);

struct Renaming {
  std::map<int, int> old_to_new;
};

struct NormalizedWord {
  Word word;
  Renaming renaming;
};

/// Relabels generators by first occurrence so that exactly 1..r' are used.
NormalizedWord normalize_rank(const Word& w);

/// Applies the inverse of a renaming produced by normalize_rank.
Word denormalize(const Word& w, const Renaming& renaming);

/// Bit length of the binary encoding: |w|·(⌈log2 r⌉ + 1).
std::uint64_t code_length(const Word& w);

}  // namespace fsg
