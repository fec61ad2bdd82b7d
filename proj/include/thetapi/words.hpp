// Words in a free group. A letter is a nonzero int: +(i+1) is generator i,
// -(i+1) its inverse.
#pragma once

#include <string>
#include <vector>

namespace thetapi {

using Word = std::vector<int>;

inline int generator_of(int letter) { return (letter > 0 ? letter : -letter) - 1; }

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// Free reduction followed by cancelling matching ends (conjugation).
Word cyclic_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

/// Representative of the cyclic word up to rotation and inversion:
/// lexicographically least among all rotations of w and w^-1.
Word cyclic_canonical(const Word& w);

/// Signed letter count per generator.
std::vector<long long> exponent_sums(const Word& w, std::size_t n_generators);

/// "g1 g3^-1 g1", generators numbered from 1; "1" for the empty word.
std::string word_to_string(const Word& w);

}  // namespace thetapi
