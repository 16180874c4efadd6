#include "drmsim/mapping.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "drmsim/group_codes.hpp"

namespace drmsim {

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits) {
    if (bits.size() > 63) throw std::invalid_argument("bits_to_index: too many bits");
    std::uint64_t v = 0;
    for (auto b : bits) {
        if (b > 1) throw std::invalid_argument("bits_to_index: bit value must be 0 or 1");
        v = (v << 1) | b;
    }
    return v;
}

Bits index_to_bits(std::uint64_t index, int width) {
    Bits out(static_cast<std::size_t>(width));
    for (int i = width - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index & 1u);
        index >>= 1;
    }
    return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

Bits bits_from_string(const std::string& text) {
    Bits out;
    out.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bit string must contain only 0/1");
        out.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
}

int permutation_bit_count(int K) {
    if (K < 1 || K > 20) throw std::invalid_argument("permutation_bit_count: K out of range");
    std::uint64_t fact = 1;
    for (int i = 2; i <= K; ++i) fact *= static_cast<std::uint64_t>(i);
    return static_cast<int>(std::bit_width(fact)) - 1;
}

namespace {

CMatrix permutation_matrix(const std::vector<int>& one_line) {
    const std::size_t K = one_line.size();
    CMatrix Z(K, K);
    for (std::size_t row = 0; row < K; ++row) Z(row, static_cast<std::size_t>(one_line[row])) = 1.0;
    return Z;
}

void check_block_width(std::span<const std::uint8_t> bits, std::size_t expected, const char* what) {
    if (bits.size() != expected) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                    " bits, got " + std::to_string(bits.size()));
    }
}

}  // namespace

PermutationCodebook permutation_codebook_from_one_line(int K, std::vector<std::vector<int>> perms) {
    if (K < 2 || K > 8) throw std::invalid_argument("permutation codebook: K must be in [2, 8]");
    PermutationCodebook cb;
    cb.K = K;
    cb.r1 = permutation_bit_count(K);
    const std::size_t expected = std::size_t{1} << cb.r1;
    if (perms.size() != expected) {
        throw std::invalid_argument("permutation codebook: need exactly " + std::to_string(expected) +
                                    " permutations for K=" + std::to_string(K) + ", got " +
                                    std::to_string(perms.size()));
    }
    for (const auto& p : perms) {
        if (p.size() != static_cast<std::size_t>(K)) {
            throw std::invalid_argument("permutation codebook: wrong permutation length");
        }
        std::vector<int> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < K; ++i) {
            if (sorted[static_cast<std::size_t>(i)] != i) {
                throw std::invalid_argument("permutation codebook: entry is not a permutation");
            }
        }
    }
    auto uniq = perms;
    std::sort(uniq.begin(), uniq.end());
    if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end()) {
        throw std::invalid_argument("permutation codebook: duplicate permutation");
    }
    cb.matrices.reserve(perms.size());
    for (const auto& p : perms) cb.matrices.push_back(permutation_matrix(p));
    cb.one_line = std::move(perms);
    return cb;
}

PermutationCodebook build_permutation_codebook(int K) {
    if (K < 2 || K > 8) throw std::invalid_argument("build_permutation_codebook: K must be in [2, 8]");
    if (K == 3) {
        // C1..C4 of the published 2-bit table.
        return permutation_codebook_from_one_line(3, {{1, 2, 0}, {1, 0, 2}, {0, 1, 2}, {0, 2, 1}});
    }
    const std::size_t count = std::size_t{1} << permutation_bit_count(K);
    std::vector<std::vector<int>> perms;
    perms.reserve(count);
    std::vector<int> p(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        perms.push_back(p);
    } while (perms.size() < count && std::next_permutation(p.begin(), p.end()));
    return permutation_codebook_from_one_line(K, std::move(perms));
}

PermutationCodebook read_permutation_codebook(std::istream& in, int K) {
    std::vector<std::vector<int>> perms;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<int> p;
        int v;
        while (ls >> v) p.push_back(v - 1);
        if (!ls.eof()) {
            throw std::invalid_argument("codebook line " + std::to_string(line_no) + ": not an integer list");
        }
        if (!p.empty()) perms.push_back(std::move(p));
    }
    return permutation_codebook_from_one_line(K, std::move(perms));
}

PermutationCodebook load_permutation_codebook(const std::filesystem::path& path, int K) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open codebook file " + path.string());
    return read_permutation_codebook(in, K);
}

void write_permutation_codebook(std::ostream& out, const PermutationCodebook& cb) {
    for (const auto& p : cb.one_line) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i] + 1;
        out << '\n';
    }
}

CMatrix bits_to_permutation(const PermutationCodebook& cb, std::span<const std::uint8_t> bits) {
    check_block_width(bits, static_cast<std::size_t>(cb.r1), "bits_to_permutation");
    return cb.matrices[bits_to_index(bits)];
}

Bits permutation_to_bits(const PermutationCodebook& cb, const CMatrix& Z) {
    for (std::size_t i = 0; i < cb.matrices.size(); ++i) {
        if (approx_eq(cb.matrices[i], Z)) return index_to_bits(i, cb.r1);
    }
    throw std::invalid_argument("permutation_to_bits: matrix not in codebook");
}

PskConstellation make_psk(int M) {
    if (M < 2 || !std::has_single_bit(static_cast<unsigned>(M))) {
        throw std::invalid_argument("make_psk: M must be a power of two >= 2");
    }
    PskConstellation c;
    c.M = M;
    c.bits_per_symbol = std::countr_zero(static_cast<unsigned>(M));
    c.symbols.resize(static_cast<std::size_t>(M));
    c.label_of_phase.resize(static_cast<std::size_t>(M));
    c.phase_of_label.resize(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        c.symbols[static_cast<std::size_t>(m)] = root_of_unity(m, M);
        const auto gray = static_cast<std::uint32_t>(m ^ (m >> 1));
        c.label_of_phase[static_cast<std::size_t>(m)] = gray;
        c.phase_of_label[gray] = static_cast<std::uint32_t>(m);
    }
    return c;
}

CMatrix bits_to_psk_diagonal(const PskConstellation& c, std::span<const std::uint8_t> bits, int K) {
    const auto b = static_cast<std::size_t>(c.bits_per_symbol);
    check_block_width(bits, b * static_cast<std::size_t>(K), "bits_to_psk_diagonal");
    std::vector<cplx> diag(static_cast<std::size_t>(K));
    for (std::size_t k = 0; k < diag.size(); ++k) {
        const auto label = static_cast<std::uint32_t>(bits_to_index(bits.subspan(k * b, b)));
        diag[k] = c.symbol_for_label(label);
    }
    return CMatrix::diagonal(diag);
}

Bits psk_diagonal_to_bits(const PskConstellation& c, const CMatrix& S) {
    if (!S.is_square()) throw DimensionError("psk_diagonal_to_bits: matrix is not square");
    Bits out;
    out.reserve(S.rows() * static_cast<std::size_t>(c.bits_per_symbol));
    for (std::size_t k = 0; k < S.rows(); ++k) {
        const cplx s = S(k, k);
        std::size_t best = 0;
        double best_d = std::norm(s - c.symbols[0]);
        for (std::size_t m = 1; m < c.symbols.size(); ++m) {
            const double d = std::norm(s - c.symbols[m]);
            if (d < best_d) {
                best_d = d;
                best = m;
            }
        }
        const Bits sym = index_to_bits(c.label_of_phase[best], c.bits_per_symbol);
        out.insert(out.end(), sym.begin(), sym.end());
    }
    return out;
}

CMatrix bits_to_group_element(const GroupCode& g, std::span<const std::uint8_t> bits) {
    if (bits.size() >= 63 || (std::size_t{1} << bits.size()) != g.size()) {
        throw std::invalid_argument("bits_to_group_element: 2^" + std::to_string(bits.size()) +
                                    " != |G| = " + std::to_string(g.size()));
    }
    return g.elements[bits_to_index(bits)];
}

Bits group_element_to_bits(const GroupCode& g, const CMatrix& G) {
    const std::size_t idx = g.index_of(G);
    if (idx == g.size()) throw std::invalid_argument("group_element_to_bits: matrix not in code");
    return index_to_bits(idx, std::countr_zero(g.size()));
}

Bits BlockBits::concat() const {
    Bits out = perm_bits;
    out.insert(out.end(), payload_bits.begin(), payload_bits.end());
    return out;
}

}  // namespace drmsim
