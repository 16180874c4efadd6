#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "drmsim/cmatrix.hpp"
#include "drmsim/group_codes.hpp"
#include "drmsim/ris_channel.hpp"
#include "drmsim/transceiver.hpp"

namespace drmsim {

// Information bits per transmitted symbol slot over a T-block frame whose
// first block is a reference.
double transmission_rate(int K, int M, int T);

struct ComplexityReport {
    std::string scheme;
    int K = 0;
    int M = 0;
    int Nr = 0;
    std::optional<CodeKind> kind;
    std::uint64_t multiplications = 0;
    std::string formula_name;
    // Same count with the number of code matrices taken as |G| = M. Only set
    // when it differs from `multiplications` (dicyclic codes).
    std::optional<std::uint64_t> group_size_multiplications;
};

// 2^r1 * M^K * (K^2 N_r + K^3)
ComplexityReport complexity_uncoded(int K, int M, int Nr);
// 2^r1 * M * (K^2 N_r + K^3) for cyclic, 2^r1 * 2M * (...) for dicyclic.
ComplexityReport complexity_coded(int K, int M, int Nr, CodeKind kind);

double q_function(double x);

// Q(sqrt(d^2 / (2 sigma2))).
double pairwise_error_probability(double distance, double sigma2);

// || (h_d + H2 phi_a h_1) s_a - (h_d + H2 phi_b h_1) s_b ||_2
double euclidean_distance_received(const ChannelRealization& ch, const ReflectingPattern& phi_a, cplx s_a,
                                   const ReflectingPattern& phi_b, cplx s_b);

// || H (X_a - X_b) ||_F^2, the same distance accumulated over every slot of a block.
double block_distance_sq(const CMatrix& H, const CMatrix& X_a, const CMatrix& X_b);

// Noise variance seen by the differential detector: Y[t] - Y[t-1] X carries
// N[t] - N[t-1] X, twice the per-entry channel noise.
inline double differential_noise_variance(double sigma2) { return 2.0 * sigma2; }

inline constexpr std::size_t kMaxBoundCandidates = std::size_t{1} << 12;

// (1/2^r) sum_a sum_{b != a} d_H(label_a, label_b) Q(sqrt(D^2 / (2 sigma2)))
// for one channel matrix H, with D^2 = ||H (X_a - X_b)||_F^2 and Hamming
// distances on the full r-bit labels (not divided by r).
double union_bound_ber(const CMatrix& H, const CandidateSet& cs, double sigma2);

// High-SNR weighted pairwise error probability
// d_H * C(2 N_r - 1, N_r - 1) * (rho * D)^(-N_r).
double weighted_pep_asymptotic(int hamming_distance, double distance, double rho, int Nr);

std::uint64_t binomial(int n, int k);

}  // namespace drmsim
