#include "drmsim/ris_channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "drmsim/mapping.hpp"

namespace drmsim {

namespace {

std::string format_entry(cplx v) {
    std::ostringstream os;
    os.precision(17);
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "j";
    return os.str();
}

cplx parse_entry(const std::string& tok) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const double re = std::strtod(s, &end);
    if (end == s) throw std::invalid_argument("pattern entry '" + tok + "' is not a number");
    if (*end == '\0') return {re, 0.0};
    const char* im_start = end;
    const double im = std::strtod(im_start, &end);
    if (end == im_start || *end != 'j' || end[1] != '\0') {
        throw std::invalid_argument("pattern entry '" + tok + "' is not of the form re or re+imj");
    }
    return {re, im};
}

void require_patterns(const std::vector<ReflectingPattern>& selected, std::size_t N) {
    if (selected.empty()) throw std::invalid_argument("channel: no reflecting patterns selected");
    for (const auto& p : selected)
        if (p.size() != N) throw DimensionError("channel: pattern length does not match N");
}

}  // namespace

std::string to_string(const ReflectingPattern& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.phi.size(); ++i) s += (i ? "," : "") + format_entry(p.phi[i]);
    return s + ")";
}

std::vector<ReflectingPattern> enumerate_sign_patterns(int N) {
    if (N < 1 || N > 20) throw std::invalid_argument("enumerate_sign_patterns: N out of range");
    const std::size_t count = std::size_t{1} << N;
    std::vector<ReflectingPattern> out(count);
    for (std::size_t p = 0; p < count; ++p) {
        out[p].phi.resize(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n) {
            const bool neg = (p >> (N - 1 - n)) & 1u;
            out[p].phi[static_cast<std::size_t>(n)] = neg ? -1.0 : 1.0;
        }
    }
    return out;
}

ReflectingPatternSet make_pattern_set(int N, std::vector<ReflectingPattern> selected) {
    if (selected.empty()) throw std::invalid_argument("pattern set: no patterns selected");
    ReflectingPatternSet set;
    set.N = N;
    for (const auto& p : selected) {
        if (p.size() != static_cast<std::size_t>(N)) throw DimensionError("pattern set: pattern length != N");
        for (const auto& v : p.phi) {
            const double mag = std::abs(v);
            if (mag > kDefaultTol && std::abs(mag - 1.0) > kDefaultTol) {
                throw std::invalid_argument("pattern set: entries must have magnitude 0 or 1");
            }
        }
    }
    for (std::size_t i = 0; i < selected.size(); ++i)
        for (std::size_t j = i + 1; j < selected.size(); ++j)
            if (selected[i] == selected[j]) throw std::invalid_argument("pattern set: duplicate pattern");
    if (N <= kMaxDepletionUnits) set.candidates = enumerate_sign_patterns(N);
    std::vector<CMatrix> blocks;
    for (const auto& p : selected) blocks.push_back(p.matrix());
    set.Q = block_diagonal(blocks);
    set.selected = std::move(selected);
    return set;
}

ReflectingPatternSet random_pattern_set(int K, int N) {
    const auto all = enumerate_sign_patterns(N);
    if (K < 1 || static_cast<std::size_t>(K) > all.size()) {
        throw std::invalid_argument("random_pattern_set: K must be in [1, 2^N]");
    }
    if (K == 2 && N == 4) return make_pattern_set(N, {all[7], all[15]});
    return make_pattern_set(N, std::vector<ReflectingPattern>(all.begin(), all.begin() + K));
}

CMatrix equivalent_channel(const std::vector<cplx>& h_d, const std::vector<cplx>& h_1, const CMatrix& H2,
                           const std::vector<ReflectingPattern>& selected) {
    const std::size_t Nr = h_d.size(), N = h_1.size();
    if (H2.rows() != Nr || H2.cols() != N) throw DimensionError("equivalent_channel: H2 shape");
    require_patterns(selected, N);
    CMatrix H(Nr, selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const auto& phi = selected[i].phi;
        for (std::size_t r = 0; r < Nr; ++r) {
            cplx acc = h_d[r];
            for (std::size_t n = 0; n < N; ++n) acc += H2(r, n) * phi[n] * h_1[n];
            H(r, i) = acc;
        }
    }
    return H;
}

CMatrix equivalent_channel_stacked(const std::vector<cplx>& h_d, const std::vector<cplx>& h_1, const CMatrix& H2,
                                   const std::vector<ReflectingPattern>& selected) {
    const std::size_t Nr = h_d.size(), N = h_1.size(), K = selected.size();
    if (H2.rows() != Nr || H2.cols() != N) throw DimensionError("equivalent_channel_stacked: H2 shape");
    require_patterns(selected, N);
    CMatrix Hd_tilde(Nr, K);
    for (std::size_t i = 0; i < K; ++i) Hd_tilde.set_col(i, h_d);
    const std::vector<CMatrix> h2_copies(K, H2);
    const CMatrix H2_tilde = hstack(h2_copies);
    std::vector<CMatrix> phis;
    for (const auto& p : selected) phis.push_back(p.matrix());
    const CMatrix Q = block_diagonal(phis);
    const std::vector<CMatrix> h1_copies(K, CMatrix::column(h_1));
    const CMatrix H1_tilde = block_diagonal(h1_copies);
    return Hd_tilde + matmul(matmul(H2_tilde, Q), H1_tilde);
}

ChannelRealization make_channel(std::vector<cplx> h_d, std::vector<cplx> h_1, CMatrix H2,
                                const std::vector<ReflectingPattern>& selected) {
    ChannelRealization ch;
    ch.H = equivalent_channel(h_d, h_1, H2, selected);
    ch.h_d = std::move(h_d);
    ch.h_1 = std::move(h_1);
    ch.H2 = std::move(H2);
    return ch;
}

cplx complex_gaussian(Philox4x32& rng, double variance) {
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

ChannelRealization draw_channel(Philox4x32& rng, int N, int Nr, const std::vector<ReflectingPattern>& selected) {
    if (N < 1 || Nr < 1) throw std::invalid_argument("draw_channel: N and N_r must be positive");
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    auto draw = [&]() {
        const double re = g(rng);
        const double im = g(rng);
        return cplx{re, im};
    };
    std::vector<cplx> h_d(static_cast<std::size_t>(Nr)), h_1(static_cast<std::size_t>(N));
    for (auto& v : h_d) v = draw();
    for (auto& v : h_1) v = draw();
    CMatrix H2(static_cast<std::size_t>(Nr), static_cast<std::size_t>(N));
    for (auto& v : H2.entries()) v = draw();
    return make_channel(std::move(h_d), std::move(h_1), std::move(H2), selected);
}

CMatrix add_awgn(Philox4x32& rng, const CMatrix& clean, double sigma2) {
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("add_awgn: sigma2 must be >= 0");
    if (sigma2 == 0.0) return clean;
    std::normal_distribution<double> g(0.0, std::sqrt(sigma2 / 2.0));
    CMatrix out = clean;
    for (auto& v : out.entries()) {
        const double re = g(rng);
        const double im = g(rng);
        v += cplx{re, im};
    }
    return out;
}

double tuple_distance(const ReflectingPattern& phi_i, cplx s_k, const ReflectingPattern& phi_j, cplx s_l) {
    if (phi_i.size() != phi_j.size()) throw DimensionError("tuple_distance: pattern lengths differ");
    double s = 0.0;
    for (std::size_t n = 0; n < phi_i.size(); ++n) s += std::norm(phi_i.phi[n] * s_k - phi_j.phi[n] * s_l);
    return std::sqrt(s);
}

namespace {

// Squared distance between the closest tuples of two patterns, or between two
// distinct symbols of one pattern when i == j.
double pattern_pair_distance_sq(const ReflectingPattern& a, const ReflectingPattern& b, bool same,
                                const std::vector<cplx>& symbols) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        for (std::size_t l = 0; l < symbols.size(); ++l) {
            if (same && k == l) continue;
            double s = 0.0;
            for (std::size_t n = 0; n < a.size(); ++n) s += std::norm(a.phi[n] * symbols[k] - b.phi[n] * symbols[l]);
            best = std::min(best, s);
        }
    }
    return best;
}

long long quantize(double d2) { return std::llround(d2 * 1e9); }

}  // namespace

double min_tuple_distance(const std::vector<ReflectingPattern>& patterns, int M) {
    const auto psk = make_psk(M);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < patterns.size(); ++i)
        for (std::size_t j = i; j < patterns.size(); ++j) {
            if (patterns[i].size() != patterns[j].size()) throw DimensionError("min_tuple_distance: lengths differ");
            best = std::min(best, pattern_pair_distance_sq(patterns[i], patterns[j], i == j, psk.symbols));
        }
    return std::isfinite(best) ? std::sqrt(best) : 0.0;
}

DepletionResult select_patterns_stepwise_depletion(int N, int M, int K) {
    if (N < 1 || N > kMaxDepletionUnits) {
        throw std::invalid_argument("stepwise depletion: N must be in [1, " + std::to_string(kMaxDepletionUnits) + "]");
    }
    const auto candidates = enumerate_sign_patterns(N);
    const std::size_t C = candidates.size();
    if (K < 1 || static_cast<std::size_t>(K) > C) {
        throw std::invalid_argument("stepwise depletion: K=" + std::to_string(K) + " exceeds 2^N=" + std::to_string(C));
    }
    const auto psk = make_psk(M);

    // Intra-pattern distance is the same for every full-magnitude sign pattern,
    // so it bounds the result but never decides which pattern goes.
    double intra_sq = std::numeric_limits<double>::infinity();
    if (M > 1) intra_sq = pattern_pair_distance_sq(candidates[0], candidates[0], true, psk.symbols);

    struct Pair {
        long long q;
        double d2;
        std::uint32_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(C * (C - 1) / 2);
    for (std::size_t i = 0; i < C; ++i)
        for (std::size_t j = i + 1; j < C; ++j) {
            const double d2 = pattern_pair_distance_sq(candidates[i], candidates[j], false, psk.symbols);
            pairs.push_back({quantize(d2), d2, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.q != b.q) return a.q < b.q;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<char> alive(C, 1);
    std::size_t remaining = C;
    std::size_t pos = 0;
    auto advance = [&]() {
        while (pos < pairs.size() && !(alive[pairs[pos].i] && alive[pairs[pos].j])) ++pos;
    };
    auto survivor_min = [&]() {
        const double inter = pos < pairs.size() ? pairs[pos].d2 : std::numeric_limits<double>::infinity();
        const double d2 = std::min(inter, intra_sq);
        return std::isfinite(d2) ? std::sqrt(d2) : 0.0;
    };

    DepletionResult result;
    advance();
    result.initial_min_distance = survivor_min();
    while (remaining > static_cast<std::size_t>(K)) {
        advance();
        const Pair& p = pairs[pos];
        alive[p.j] = 0;
        --remaining;
        advance();
        result.trace.push_back({p.j, p.i, std::sqrt(p.d2), survivor_min()});
    }
    advance();
    result.min_distance = survivor_min();

    std::vector<ReflectingPattern> selected;
    for (std::size_t i = 0; i < C; ++i)
        if (alive[i]) {
            result.selected_index.push_back(i);
            selected.push_back(candidates[i]);
        }
    result.set = make_pattern_set(N, std::move(selected));
    return result;
}

std::vector<ReflectingPattern> read_patterns(std::istream& in) {
    std::vector<ReflectingPattern> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        ReflectingPattern p;
        std::string tok;
        try {
            while (ls >> tok) p.phi.push_back(parse_entry(tok));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("pattern file line " + std::to_string(line_no) + ": " + e.what());
        }
        if (p.phi.empty()) continue;
        if (!out.empty() && p.size() != out.front().size()) {
            throw std::invalid_argument("pattern file line " + std::to_string(line_no) + ": inconsistent length");
        }
        out.push_back(std::move(p));
    }
    if (out.empty()) throw std::invalid_argument("pattern file holds no patterns");
    return out;
}

std::vector<ReflectingPattern> load_patterns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file " + path.string());
    return read_patterns(in);
}

void write_patterns(std::ostream& out, const std::vector<ReflectingPattern>& patterns,
                    const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << '\n';
    for (const auto& p : patterns) {
        for (std::size_t n = 0; n < p.size(); ++n) out << (n ? " " : "") << format_entry(p.phi[n]);
        out << '\n';
    }
}

}  // namespace drmsim
