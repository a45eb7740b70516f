#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "flowclass/spectral/descriptor.hpp"
#include "flowclass/spectral/spectral.hpp"

namespace flowclass::invariants {

inline std::size_t x_reduce(std::size_t m) { return (m + 1) / 2; }
inline std::size_t y_reduce(std::size_t m) { return m / 2; }

/// Size of Z^(k)(W_m): Z^(1) = Y, Z^(2r) = Z^(r) X, Z^(2r+1) = Z^(r) Y.
std::size_t z_reduce(std::size_t k, std::size_t m);

/// Binary digits of k as a word over {X, Y} (X = 0, Y = 1), most significant first.
std::string z_word(std::size_t k);

/// Applies a word to a block size, rightmost letter first.
std::size_t apply_word(std::string_view word, std::size_t m);

/// Block size read from a word in binary (X = 0, Y = 1); the empty word is 0.
std::size_t word_value(std::string_view word);

/// Word for a block size (inverse of word_value; 0 maps to the empty word).
std::string size_word(std::size_t m);

/// Acts with X or Y on W_b where b is given as a word, by rewriting the word:
/// X drops a trailing X, or drops a trailing Y and increments; Y drops the last letter.
std::string reduce_word(char op, std::string_view b);

struct FLevel {
    std::size_t k = 0;
    std::size_t dim = 0;
    std::vector<std::pair<spectral::Eigenvalue, std::size_t>> multiplicities;
};

/// dim F^(k) for k = 0..kmax, with the multiplicity sum_{m>k} N(lambda, m) per eigenvalue.
std::vector<FLevel> f_dimensions(const std::vector<spectral::JordanBlocks>& center_blocks, std::size_t kmax,
                                 double tol = spectral::kDescriptorTol);

/// N(lambda, m) = mult(m-1) - mult(m) from a non-increasing sequence ending in 0.
std::vector<spectral::JordanCount> n_from_f(const std::vector<std::size_t>& mults);

/// Center blocks recovered from f_dimensions output, one n_from_f per eigenvalue.
std::vector<spectral::JordanBlocks> blocks_from_f(const std::vector<FLevel>& levels, double tol = spectral::kDescriptorTol);

}  // namespace flowclass::invariants
