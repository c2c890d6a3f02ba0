#pragma once

// Seeded instance generators for tests and benchmarks.

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "fsg/words.hpp"

namespace fsg {

/// Uniform non-backtracking walk of exactly `length` letters.
Word random_reduced_word(std::mt19937_64& rng, int rank, std::size_t length);

/// A nonempty element of F^{(depth)}: commutators nested `depth` times over
/// random reduced words of length 1..leaf_length.
Word nested_commutator(std::mt19937_64& rng, int rank, int depth, std::size_t leaf_length = 2);

/// Product of 1..3 conjugates of nested commutators from F^{(degree)}, so
/// trivial in S_{r,degree}, with length in [min_length, max_length].
Word known_trivial_word(std::mt19937_64& rng, int rank, int degree, std::size_t min_length, std::size_t max_length);

/// Calls `visit` on every reduced word of length <= max_length, shortest first.
void for_each_reduced_word(int rank, std::size_t max_length, const std::function<void(const Word&)>& visit);
std::vector<Word> reduced_words(int rank, std::size_t max_length);

}  // namespace fsg
