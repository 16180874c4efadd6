#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "drmsim/cmatrix.hpp"
#include "drmsim/group_codes.hpp"
#include "drmsim/mapping.hpp"

namespace drmsim {

// drm: differential permutation x PSK; drm_dstm: differential permutation x
// group code; ndrm: the DRM alphabet sent non-differentially and detected
// with perfect channel knowledge.
enum class Scheme { drm, drm_dstm, ndrm };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& text);

inline constexpr std::size_t kMaxCandidates = std::size_t{1} << 20;

// Every information matrix of a scheme. Candidate index i has bit label
// index_to_bits(i, r1 + payload_bits): the permutation index in the leading
// r1 bits and the payload (PSK labels or group element index) after it.
struct CandidateSet {
    int K = 0;
    int r1 = 0;
    int payload_bits = 0;
    std::vector<CMatrix> matrices;

    std::size_t size() const noexcept { return matrices.size(); }
    int bits_per_block() const noexcept { return r1 + payload_bits; }
    std::size_t payload_count() const noexcept { return std::size_t{1} << payload_bits; }

    BlockBits label(std::size_t index) const;
    std::size_t index_of(const BlockBits& bits) const;
};

CandidateSet build_candidate_set(const PermutationCodebook& cb, const PskConstellation& psk);
CandidateSet build_candidate_set(const PermutationCodebook& cb, const GroupCode& code);

struct FrameState {
    Scheme scheme = Scheme::drm;
    CMatrix V_prev;
    std::size_t t = 0;  // blocks sent so far, including the reference
    std::size_t T = 0;
};

// Reference block: V[0] = I for DRM/NDRM, V'[0] = D / sqrt(K) for DRM-DSTM.
FrameState start_frame(Scheme scheme, int K, std::size_t T, const CMatrix* normalized_D = nullptr);

struct EncodedBlock {
    CMatrix X;
    CMatrix V;
};

// X = Z S, V = V_prev X.
EncodedBlock encode_block_drm(FrameState& state, const BlockBits& bits, const PermutationCodebook& cb,
                              const PskConstellation& psk);
// X' = Z G, V' = V'_prev X'.
EncodedBlock encode_block_dstm(FrameState& state, const BlockBits& bits, const PermutationCodebook& cb,
                               const GroupCode& code);
// Advances the chain with an already-built information matrix. NDRM sends X
// itself rather than the running product.
const CMatrix& encode_block(FrameState& state, const CMatrix& X);

struct Detection {
    std::size_t index = 0;
    double metric = 0.0;
};

// argmax_X Re tr(Y_curr^H Y_prev X); lowest index wins ties.
Detection cdd_detect(const CMatrix& Y_prev, const CMatrix& Y_curr, const CandidateSet& cs);
// argmin_X ||Y_curr - Y_prev X||_F^2; lowest index wins ties.
Detection cdd_detect_frobenius(const CMatrix& Y_prev, const CMatrix& Y_curr, const CandidateSet& cs);
// argmin_X ||Y - H X||_F^2 with known H; lowest index wins ties.
Detection coherent_detect_ndrm(const CMatrix& Y, const CMatrix& H, const CandidateSet& cs);

// Coherent detector with H X cached for every candidate; reuse it for all
// blocks of a frame.
class CoherentDetector {
public:
    CoherentDetector(const CMatrix& H, const CandidateSet& cs);
    Detection detect(const CMatrix& Y) const;

private:
    std::vector<CMatrix> hx_;
};

BlockBits recover_bits(std::size_t index, const CandidateSet& cs);

}  // namespace drmsim
