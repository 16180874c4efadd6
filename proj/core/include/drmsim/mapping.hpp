#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "drmsim/cmatrix.hpp"

namespace drmsim {

struct GroupCode;

// One bit per element, values 0/1, most significant bit first.
using Bits = std::vector<std::uint8_t>;

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits);
Bits index_to_bits(std::uint64_t index, int width);
std::string bits_to_string(std::span<const std::uint8_t> bits);
Bits bits_from_string(const std::string& text);

// floor(log2(K!)).
int permutation_bit_count(int K);

struct PermutationCodebook {
    int K = 0;
    int r1 = 0;
    // one_line[i][row] = column (0-based) holding the 1 in that row.
    std::vector<std::vector<int>> one_line;
    std::vector<CMatrix> matrices;

    std::size_t size() const noexcept { return matrices.size(); }
};

// Table-I matrices for K = 3, lexicographic prefix (identity first) otherwise.
PermutationCodebook build_permutation_codebook(int K);
PermutationCodebook permutation_codebook_from_one_line(int K, std::vector<std::vector<int>> perms);

// Text format: one permutation per line in 1-based one-line notation
// ("2 3 1"), line order = bit index. '#' starts a comment.
PermutationCodebook read_permutation_codebook(std::istream& in, int K);
PermutationCodebook load_permutation_codebook(const std::filesystem::path& path, int K);
void write_permutation_codebook(std::ostream& out, const PermutationCodebook& cb);

CMatrix bits_to_permutation(const PermutationCodebook& cb, std::span<const std::uint8_t> bits);
Bits permutation_to_bits(const PermutationCodebook& cb, const CMatrix& Z);

struct PskConstellation {
    int M = 0;
    int bits_per_symbol = 0;
    // symbols[m] = exp(2*pi*j*m/M), m = phase index.
    std::vector<cplx> symbols;
    // Binary-reflected Gray label of each phase index, and its inverse.
    std::vector<std::uint32_t> label_of_phase;
    std::vector<std::uint32_t> phase_of_label;

    cplx symbol_for_label(std::uint32_t label) const { return symbols[phase_of_label[label]]; }
};

PskConstellation make_psk(int M);

// K slots x log2(M) bits -> diag(s_1..s_K), slot 1 taking the leading bits.
CMatrix bits_to_psk_diagonal(const PskConstellation& c, std::span<const std::uint8_t> bits, int K);
Bits psk_diagonal_to_bits(const PskConstellation& c, const CMatrix& S);

CMatrix bits_to_group_element(const GroupCode& g, std::span<const std::uint8_t> bits);
Bits group_element_to_bits(const GroupCode& g, const CMatrix& G);

struct BlockBits {
    Bits perm_bits;
    Bits payload_bits;

    Bits concat() const;
    friend bool operator==(const BlockBits&, const BlockBits&) = default;
};

}  // namespace drmsim
