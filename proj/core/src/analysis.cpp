#include "drmsim/analysis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "drmsim/mapping.hpp"

namespace drmsim {

double transmission_rate(int K, int M, int T) {
    if (T < 1) throw std::invalid_argument("transmission_rate: T must be >= 1");
    if (K < 1 || M < 2) throw std::invalid_argument("transmission_rate: need K >= 1 and M >= 2");
    const double r = permutation_bit_count(K) + K * std::log2(static_cast<double>(M));
    return (T - 1) * r / (static_cast<double>(T) * K);
}

namespace {

std::uint64_t per_test_cost(int K, int Nr) {
    const auto k = static_cast<std::uint64_t>(K);
    return k * k * static_cast<std::uint64_t>(Nr) + k * k * k;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > UINT64_MAX / base) throw std::overflow_error("complexity: count overflows 64 bits");
        v *= base;
    }
    return v;
}

void check_args(int K, int M, int Nr) {
    if (K < 2 || K > 8 || M < 2 || Nr < 1) throw std::invalid_argument("complexity: need K in [2,8], M >= 2, N_r >= 1");
}

}  // namespace

ComplexityReport complexity_uncoded(int K, int M, int Nr) {
    check_args(K, M, Nr);
    ComplexityReport r;
    r.scheme = "drm";
    r.K = K;
    r.M = M;
    r.Nr = Nr;
    r.formula_name = "2^floor(log2 K!) * M^K * (K^2 Nr + K^3)";
    const std::uint64_t perms = std::uint64_t{1} << permutation_bit_count(K);
    r.multiplications = perms * checked_pow(static_cast<std::uint64_t>(M), K) * per_test_cost(K, Nr);
    return r;
}

ComplexityReport complexity_coded(int K, int M, int Nr, CodeKind kind) {
    check_args(K, M, Nr);
    ComplexityReport r;
    r.scheme = "drm-dstm";
    r.K = K;
    r.M = M;
    r.Nr = Nr;
    r.kind = kind;
    const std::uint64_t perms = std::uint64_t{1} << permutation_bit_count(K);
    const auto m = static_cast<std::uint64_t>(M);
    const std::uint64_t per = per_test_cost(K, Nr);
    if (kind == CodeKind::cyclic) {
        r.formula_name = "2^floor(log2 K!) * M * (K^2 Nr + K^3)";
        r.multiplications = perms * m * per;
    } else {
        r.formula_name = "2^floor(log2 K!) * 2M * (K^2 Nr + K^3)";
        r.multiplications = perms * 2 * m * per;
        r.group_size_multiplications = perms * m * per;
    }
    return r;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double pairwise_error_probability(double distance, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("pairwise_error_probability: sigma2 must be > 0");
    if (distance < 0.0) throw std::invalid_argument("pairwise_error_probability: distance must be >= 0");
    if (std::isinf(distance)) return 0.0;
    return q_function(std::sqrt(distance * distance / (2.0 * sigma2)));
}

double euclidean_distance_received(const ChannelRealization& ch, const ReflectingPattern& phi_a, cplx s_a,
                                   const ReflectingPattern& phi_b, cplx s_b) {
    const std::vector<ReflectingPattern> pair{phi_a, phi_b};
    const CMatrix cols = equivalent_channel(ch.h_d, ch.h_1, ch.H2, pair);
    double s = 0.0;
    for (std::size_t r = 0; r < cols.rows(); ++r) s += std::norm(cols(r, 0) * s_a - cols(r, 1) * s_b);
    return std::sqrt(s);
}

double block_distance_sq(const CMatrix& H, const CMatrix& X_a, const CMatrix& X_b) {
    return frob_norm_sq(matmul(H, X_a - X_b));
}

double union_bound_ber(const CMatrix& H, const CandidateSet& cs, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("union_bound_ber: sigma2 must be > 0");
    if (cs.size() > kMaxBoundCandidates) {
        throw std::invalid_argument("union_bound_ber: " + std::to_string(cs.size()) + " candidates exceed the " +
                                    std::to_string(kMaxBoundCandidates) + " guard");
    }
    if (H.cols() != static_cast<std::size_t>(cs.K)) throw DimensionError("union_bound_ber: H must be N_r x K");
    std::vector<CMatrix> hx;
    hx.reserve(cs.size());
    for (const auto& X : cs.matrices) hx.push_back(matmul(H, X));
    double total = 0.0;
    for (std::size_t a = 0; a < cs.size(); ++a) {
        for (std::size_t b = a + 1; b < cs.size(); ++b) {
            const int dh = std::popcount(a ^ b);
            const double d2 = frob_norm_sq(hx[a] - hx[b]);
            // The pair contributes symmetrically for a -> b and b -> a.
            total += 2.0 * dh * q_function(std::sqrt(d2 / (2.0 * sigma2)));
        }
    }
    return total / static_cast<double>(cs.size());
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::uint64_t v = 1;
    for (int i = 1; i <= k; ++i) v = v * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return v;
}

double weighted_pep_asymptotic(int hamming_distance, double distance, double rho, int Nr) {
    if (!(rho > 0.0) || Nr < 1) throw std::invalid_argument("weighted_pep_asymptotic: need rho > 0, N_r >= 1");
    return hamming_distance * static_cast<double>(binomial(2 * Nr - 1, Nr - 1)) * std::pow(rho * distance, -Nr);
}

}  // namespace drmsim
