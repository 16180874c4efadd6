#include "drmsim/transceiver.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace drmsim {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::drm: return "drm";
        case Scheme::drm_dstm: return "drm-dstm";
        case Scheme::ndrm: return "ndrm";
    }
    return "?";
}

Scheme parse_scheme(const std::string& text) {
    if (text == "drm") return Scheme::drm;
    if (text == "drm-dstm" || text == "drm_dstm" || text == "dstm") return Scheme::drm_dstm;
    if (text == "ndrm") return Scheme::ndrm;
    throw std::invalid_argument("unknown scheme '" + text + "' (expected drm|drm-dstm|ndrm)");
}

BlockBits CandidateSet::label(std::size_t index) const {
    if (index >= size()) throw std::out_of_range("CandidateSet::label: index out of range");
    BlockBits b;
    b.perm_bits = index_to_bits(index >> payload_bits, r1);
    b.payload_bits = index_to_bits(index & (payload_count() - 1), payload_bits);
    return b;
}

std::size_t CandidateSet::index_of(const BlockBits& bits) const {
    if (bits.perm_bits.size() != static_cast<std::size_t>(r1) ||
        bits.payload_bits.size() != static_cast<std::size_t>(payload_bits)) {
        throw std::invalid_argument("CandidateSet::index_of: bit budget mismatch");
    }
    return (bits_to_index(bits.perm_bits) << payload_bits) | bits_to_index(bits.payload_bits);
}

namespace {

void check_candidate_count(int r1, int payload_bits) {
    if (r1 + payload_bits > 20) {
        throw std::invalid_argument("candidate set: 2^" + std::to_string(r1 + payload_bits) +
                                    " candidates exceed the 2^20 cap");
    }
}

}  // namespace

CandidateSet build_candidate_set(const PermutationCodebook& cb, const PskConstellation& psk) {
    CandidateSet cs;
    cs.K = cb.K;
    cs.r1 = cb.r1;
    cs.payload_bits = cb.K * psk.bits_per_symbol;
    check_candidate_count(cs.r1, cs.payload_bits);
    std::vector<CMatrix> diagonals;
    diagonals.reserve(cs.payload_count());
    for (std::size_t p = 0; p < cs.payload_count(); ++p)
        diagonals.push_back(bits_to_psk_diagonal(psk, index_to_bits(p, cs.payload_bits), cb.K));
    cs.matrices.reserve(cb.size() * diagonals.size());
    for (const auto& Z : cb.matrices)
        for (const auto& S : diagonals) cs.matrices.push_back(matmul(Z, S));
    return cs;
}

CandidateSet build_candidate_set(const PermutationCodebook& cb, const GroupCode& code) {
    if (code.spec.K != cb.K) throw std::invalid_argument("candidate set: code K differs from codebook K");
    if (!std::has_single_bit(code.size())) throw std::invalid_argument("candidate set: |G| must be a power of two");
    CandidateSet cs;
    cs.K = cb.K;
    cs.r1 = cb.r1;
    cs.payload_bits = std::countr_zero(code.size());
    check_candidate_count(cs.r1, cs.payload_bits);
    cs.matrices.reserve(cb.size() * code.size());
    for (const auto& Z : cb.matrices)
        for (const auto& G : code.elements) cs.matrices.push_back(matmul(Z, G));
    return cs;
}

FrameState start_frame(Scheme scheme, int K, std::size_t T, const CMatrix* normalized_D) {
    FrameState st;
    st.scheme = scheme;
    st.T = T;
    st.t = 1;
    if (scheme == Scheme::drm_dstm) {
        if (normalized_D == nullptr) throw std::invalid_argument("start_frame: DRM-DSTM needs an initializer");
        if (normalized_D->rows() != static_cast<std::size_t>(K) || normalized_D->cols() != static_cast<std::size_t>(K))
            throw DimensionError("start_frame: initializer must be K x K");
        st.V_prev = *normalized_D;
    } else {
        st.V_prev = CMatrix::identity(static_cast<std::size_t>(K));
    }
    return st;
}

const CMatrix& encode_block(FrameState& state, const CMatrix& X) {
    if (state.scheme == Scheme::ndrm) {
        state.V_prev = X;
    } else {
        state.V_prev = matmul(state.V_prev, X);
    }
    ++state.t;
    return state.V_prev;
}

EncodedBlock encode_block_drm(FrameState& state, const BlockBits& bits, const PermutationCodebook& cb,
                              const PskConstellation& psk) {
    if (state.scheme != Scheme::drm) throw std::invalid_argument("encode_block_drm: frame is not DRM");
    const CMatrix Z = bits_to_permutation(cb, bits.perm_bits);
    const CMatrix S = bits_to_psk_diagonal(psk, bits.payload_bits, cb.K);
    EncodedBlock out;
    out.X = matmul(Z, S);
    out.V = encode_block(state, out.X);
    return out;
}

EncodedBlock encode_block_dstm(FrameState& state, const BlockBits& bits, const PermutationCodebook& cb,
                               const GroupCode& code) {
    if (state.scheme != Scheme::drm_dstm) throw std::invalid_argument("encode_block_dstm: frame is not DRM-DSTM");
    const CMatrix Z = bits_to_permutation(cb, bits.perm_bits);
    const CMatrix G = bits_to_group_element(code, bits.payload_bits);
    EncodedBlock out;
    out.X = matmul(Z, G);
    out.V = encode_block(state, out.X);
    return out;
}

namespace {

void check_observation(const CMatrix& a, const CMatrix& b, const CandidateSet& cs, const char* what) {
    if (cs.matrices.empty()) throw std::invalid_argument(std::string(what) + ": empty candidate set");
    const auto K = static_cast<std::size_t>(cs.K);
    if (a.cols() != K || b.cols() != K || a.rows() != b.rows()) {
        throw DimensionError(std::string(what) + ": observations must both be N_r x K");
    }
}

}  // namespace

Detection cdd_detect(const CMatrix& Y_prev, const CMatrix& Y_curr, const CandidateSet& cs) {
    check_observation(Y_prev, Y_curr, cs, "cdd_detect");
    const CMatrix A = matmul(adjoint(Y_curr), Y_prev);
    Detection best{0, -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const double m = re_trace_product(A, cs.matrices[i]);
        if (m > best.metric) best = {i, m};
    }
    return best;
}

Detection cdd_detect_frobenius(const CMatrix& Y_prev, const CMatrix& Y_curr, const CandidateSet& cs) {
    check_observation(Y_prev, Y_curr, cs, "cdd_detect_frobenius");
    Detection best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const double m = frob_norm_sq(Y_curr - matmul(Y_prev, cs.matrices[i]));
        if (m < best.metric) best = {i, m};
    }
    return best;
}

Detection coherent_detect_ndrm(const CMatrix& Y, const CMatrix& H, const CandidateSet& cs) {
    check_observation(Y, H, cs, "coherent_detect_ndrm");
    Detection best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const double m = frob_norm_sq(Y - matmul(H, cs.matrices[i]));
        if (m < best.metric) best = {i, m};
    }
    return best;
}

CoherentDetector::CoherentDetector(const CMatrix& H, const CandidateSet& cs) {
    if (H.cols() != static_cast<std::size_t>(cs.K)) throw DimensionError("CoherentDetector: H must be N_r x K");
    if (cs.matrices.empty()) throw std::invalid_argument("CoherentDetector: empty candidate set");
    hx_.reserve(cs.size());
    for (const auto& X : cs.matrices) hx_.push_back(matmul(H, X));
}

Detection CoherentDetector::detect(const CMatrix& Y) const {
    const auto& first = hx_.front();
    if (Y.rows() != first.rows() || Y.cols() != first.cols()) throw DimensionError("CoherentDetector: Y shape");
    Detection best{0, std::numeric_limits<double>::infinity()};
    const auto y = Y.entries();
    for (std::size_t i = 0; i < hx_.size(); ++i) {
        const auto hx = hx_[i].entries();
        double m = 0.0;
        for (std::size_t e = 0; e < y.size(); ++e) m += std::norm(y[e] - hx[e]);
        if (m < best.metric) best = {i, m};
    }
    return best;
}

BlockBits recover_bits(std::size_t index, const CandidateSet& cs) { return cs.label(index); }

}  // namespace drmsim
