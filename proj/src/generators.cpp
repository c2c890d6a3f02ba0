#include "fsg/generators.hpp"

#include <stdexcept>

namespace fsg {

Word random_reduced_word(std::mt19937_64& rng, int rank, std::size_t length) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  std::vector<Letter> letters;
  letters.reserve(length);
  std::uniform_int_distribution<int> first(0, 2 * rank - 1);
  std::uniform_int_distribution<int> rest(0, 2 * rank - 2);
  auto letter_of = [rank](int code) { return Letter(code % rank + 1, code < rank ? 1 : -1); };
  while (letters.size() < length) {
    if (letters.empty()) {
      letters.push_back(letter_of(first(rng)));
      continue;
    }
    // Skip the inverse of the previous letter by remapping one code.
    const Letter back = letters.back().inverse();
    Letter l = letter_of(rest(rng));
    if (l == back) l = letter_of(2 * rank - 1);
    letters.push_back(l);
  }
  return Word(letters, rank);
}

Word nested_commutator(std::mt19937_64& rng, int rank, int depth, std::size_t leaf_length) {
  std::uniform_int_distribution<std::size_t> length(1, std::max<std::size_t>(leaf_length, 1));
  for (;;) {
    Word w;
    if (depth == 0) {
      w = random_reduced_word(rng, rank, length(rng));
    } else {
      w = commutator(nested_commutator(rng, rank, depth - 1, leaf_length),
                     nested_commutator(rng, rank, depth - 1, leaf_length));
    }
    if (!w.empty()) return w.with_rank(rank);
  }
}

Word known_trivial_word(std::mt19937_64& rng, int rank, int degree, std::size_t min_length, std::size_t max_length) {
  std::uniform_int_distribution<int> factors(1, 3);
  std::uniform_int_distribution<std::size_t> conjugator(0, 5);
  std::uniform_int_distribution<std::size_t> leaf(1, 3);
  for (int tries = 0; tries < 100000; ++tries) {
    Word w;
    const int count = factors(rng);
    for (int i = 0; i < count; ++i) {
      const Word z = random_reduced_word(rng, rank, conjugator(rng));
      w = w * z * nested_commutator(rng, rank, degree, leaf(rng)) * z.inverse();
    }
    if (!w.empty() && w.size() >= min_length && w.size() <= max_length) return w.with_rank(rank);
  }
  throw std::runtime_error("no trivial word found in the requested length range");
}

void for_each_reduced_word(int rank, std::size_t max_length, const std::function<void(const Word&)>& visit) {
  std::vector<Word> layer{Word{}.with_rank(rank)};
  visit(layer.front());
  for (std::size_t n = 1; n <= max_length; ++n) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (int g = 1; g <= rank; ++g)
        for (int s : {1, -1}) {
          const Letter l(g, s);
          if (!w.empty() && w[w.size() - 1] == l.inverse()) continue;
          std::vector<Letter> letters(w.begin(), w.end());
          letters.push_back(l);
          next.emplace_back(letters, rank);
          visit(next.back());
        }
    layer.swap(next);
  }
}

std::vector<Word> reduced_words(int rank, std::size_t max_length) {
  std::vector<Word> out;
  for_each_reduced_word(rank, max_length, [&](const Word& w) { out.push_back(w); });
  return out;
}

}  // namespace fsg
