#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "drmsim/cmatrix.hpp"
#include "drmsim/rng.hpp"

namespace drmsim {

// Diagonal of one N x N reflecting pattern. Entries have magnitude 1 (active
// unit) or 0 (switched off).
struct ReflectingPattern {
    std::vector<cplx> phi;

    std::size_t size() const noexcept { return phi.size(); }
    CMatrix matrix() const { return CMatrix::diagonal(phi); }
    friend bool operator==(const ReflectingPattern&, const ReflectingPattern&) = default;
};

std::string to_string(const ReflectingPattern& p);

// All 2^N +/-1 patterns. Pattern p has entry n = -1 iff bit (N-1-n) of p is set,
// so index 0 is all +1 and index 2^N - 1 is all -1.
std::vector<ReflectingPattern> enumerate_sign_patterns(int N);

struct ReflectingPatternSet {
    int N = 0;
    std::vector<ReflectingPattern> candidates;
    std::vector<ReflectingPattern> selected;
    // Block diagonal of the selected patterns, KN x KN.
    CMatrix Q;

    std::size_t K() const noexcept { return selected.size(); }
};

// Wraps an explicit selection; candidates default to the 2^N sign patterns.
ReflectingPatternSet make_pattern_set(int N, std::vector<ReflectingPattern> selected);

// K = 2, N = 4 gives the fixed (1,-1,-1,-1), (-1,-1,-1,-1) pair used as the
// random-selection baseline; otherwise the first K sign patterns.
ReflectingPatternSet random_pattern_set(int K, int N);

struct ChannelRealization {
    std::vector<cplx> h_d;  // N_r, direct link
    std::vector<cplx> h_1;  // N, transmitter to surface
    CMatrix H2;             // N_r x N, surface to receiver
    CMatrix H;              // N_r x K, one column per selected pattern

    std::size_t receive_antennas() const noexcept { return h_d.size(); }
    std::size_t units() const noexcept { return h_1.size(); }
};

// Column i of H = h_d + H2 * diag(phi_i) * h_1.
CMatrix equivalent_channel(const std::vector<cplx>& h_d, const std::vector<cplx>& h_1, const CMatrix& H2,
                           const std::vector<ReflectingPattern>& selected);
// Same matrix from the stacked block form [h_d..h_d] + [H2..H2] * Q * blkdiag(h_1..h_1).
CMatrix equivalent_channel_stacked(const std::vector<cplx>& h_d, const std::vector<cplx>& h_1, const CMatrix& H2,
                                   const std::vector<ReflectingPattern>& selected);

ChannelRealization make_channel(std::vector<cplx> h_d, std::vector<cplx> h_1, CMatrix H2,
                                const std::vector<ReflectingPattern>& selected);

// Every scalar CN(0,1). Draw order: h_d, h_1, then H2 row-major.
ChannelRealization draw_channel(Philox4x32& rng, int N, int Nr, const std::vector<ReflectingPattern>& selected);

// Complex Gaussian sample with E|z|^2 = variance.
cplx complex_gaussian(Philox4x32& rng, double variance);

// Adds i.i.d. CN(0, sigma2) to every entry; sigma2 == 0 returns the input unchanged.
CMatrix add_awgn(Philox4x32& rng, const CMatrix& clean, double sigma2);

// || phi_i s_k - phi_j s_l ||_2
double tuple_distance(const ReflectingPattern& phi_i, cplx s_k, const ReflectingPattern& phi_j, cplx s_l);

// Minimum distance between tuples (pattern, symbol) over the given patterns
// and the M-PSK alphabet. A tuple is never compared with itself; equal vectors
// reached from different (pattern, symbol) pairs count as distance 0.
double min_tuple_distance(const std::vector<ReflectingPattern>& patterns, int M);

struct DepletionStep {
    std::size_t removed = 0;          // canonical index of the dropped pattern
    std::size_t kept = 0;             // its partner in the closest pair
    double pair_distance = 0.0;       // distance that triggered the removal
    double survivor_min_distance = 0.0;
};

struct DepletionResult {
    ReflectingPatternSet set;
    std::vector<std::size_t> selected_index;  // canonical indices, ascending
    double min_distance = 0.0;                // D_ED,min of the survivors
    double initial_min_distance = 0.0;        // D_ED,min of the full candidate set
    std::vector<DepletionStep> trace;
};

inline constexpr int kMaxDepletionUnits = 10;

// Greedy pattern-level depletion over the 2^N sign patterns: repeatedly take
// the closest pair of surviving patterns (ties by canonical pair order) and
// drop the one with the larger index until K remain.
DepletionResult select_patterns_stepwise_depletion(int N, int M, int K);

// Pattern file: one pattern per line, entries "re" or "re+imj", '#' comments.
std::vector<ReflectingPattern> read_patterns(std::istream& in);
std::vector<ReflectingPattern> load_patterns(const std::filesystem::path& path);
void write_patterns(std::ostream& out, const std::vector<ReflectingPattern>& patterns,
                    const std::vector<std::string>& header_comments = {});

}  // namespace drmsim
