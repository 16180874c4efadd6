#include "drmsim/harness.hpp"

#include "drmsim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace drmsim {

std::string to_string(SnrAxis axis) { return axis == SnrAxis::per_symbol ? "snr" : "ebn0"; }

SnrAxis parse_snr_axis(const std::string& text) {
    if (text == "snr" || text == "rho" || text == "per-symbol") return SnrAxis::per_symbol;
    if (text == "ebn0" || text == "per-bit") return SnrAxis::per_bit;
    throw std::invalid_argument("unknown SNR axis '" + text + "' (expected snr|ebn0)");
}

std::string to_string(PatternSource src) {
    switch (src) {
        case PatternSource::optimized: return "optimized";
        case PatternSource::random: return "random";
        case PatternSource::file: return "file";
    }
    return "?";
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Alphabet the depletion search pairs with each pattern: the PSK order for
// uncoded schemes, the entry alphabet of the group code otherwise.
int tuple_alphabet(const SimConfig& cfg) {
    if (cfg.scheme == Scheme::drm_dstm && cfg.code_kind == CodeKind::dicyclic) return cfg.M / 2;
    return cfg.M;
}

}  // namespace

GroupCodeSpec SimConfig::code_spec() const {
    GroupCodeSpec spec{code_kind, M, K, u};
    if (spec.u.empty()) {
        for (const auto& row : builtin_code_tables(K)) {
            if (row.kind == code_kind && row.M == M) return row;
        }
        throw std::invalid_argument("no shipped " + to_string(code_kind) + " code for K=" + std::to_string(K) +
                                    ", M=" + std::to_string(M) + "; give u explicitly");
    }
    spec.validate();
    return spec;
}

void SimConfig::validate() const {
    if (K < 2 || K > 8) throw std::invalid_argument("config: K must be in [2, 8]");
    if (M < 2 || !std::has_single_bit(static_cast<unsigned>(M))) throw std::invalid_argument("config: M must be a power of two >= 2");
    if (N < 1 || N > 20) throw std::invalid_argument("config: N must be in [1, 20]");
    if (Nr < 1) throw std::invalid_argument("config: N_r must be >= 1");
    if (T < 2) throw std::invalid_argument("config: T must be >= 2");
    if (snr_db.empty()) throw std::invalid_argument("config: SNR grid is empty");
    for (double v : snr_db)
        if (!std::isfinite(v)) throw std::invalid_argument("config: SNR grid has a non-finite value");
    if (min_bit_errors < 1) throw std::invalid_argument("config: min_bit_errors must be >= 1");
    if (max_info_bits < 1) throw std::invalid_argument("config: max_info_bits must be >= 1");
    if (patterns == PatternSource::file && pattern_file.empty()) {
        throw std::invalid_argument("config: pattern source 'file' needs a path");
    }
    if (scheme == Scheme::drm_dstm) {
        code_spec().validate();
    } else if (!u.empty()) {
        throw std::invalid_argument("config: a group code only applies to scheme drm-dstm");
    }
}

std::string SimConfig::manifest() const {
    std::ostringstream os;
    os << "scheme=" << to_string(scheme) << '\n';
    os << "K=" << K << '\n';
    os << "M=" << M << '\n';
    if (scheme == Scheme::drm_dstm) {
        const auto spec = code_spec();
        os << "code=" << to_string(spec.kind) << '\n';
        os << "u=" << spec.u_list() << '\n';
        os << "init=" << to_string(init_style()) << '\n';
    }
    os << "N=" << N << '\n';
    os << "Nr=" << Nr << '\n';
    os << "T=" << T << '\n';
    os << "patterns=" << to_string(patterns) << '\n';
    if (patterns == PatternSource::file) os << "pattern_file=" << pattern_file.string() << '\n';
    if (!codebook_file.empty()) os << "codebook_file=" << codebook_file.string() << '\n';
    os << "snr_axis=" << to_string(axis) << '\n';
    os << "snr_db=";
    for (std::size_t i = 0; i < snr_db.size(); ++i) os << (i ? "," : "") << fmt_double(snr_db[i]);
    os << '\n';
    os << "min_bit_errors=" << min_bit_errors << '\n';
    os << "max_info_bits=" << max_info_bits << '\n';
    os << "max_frames=" << max_frames << '\n';
    os << "seed=" << seed << '\n';
    return os.str();
}

std::uint64_t SimConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : manifest()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Link build_link(const SimConfig& cfg) {
    cfg.validate();
    Link link;
    link.cfg = cfg;
    link.codebook = cfg.codebook_file.empty() ? build_permutation_codebook(cfg.K)
                                              : load_permutation_codebook(cfg.codebook_file, cfg.K);
    if (cfg.scheme == Scheme::drm_dstm) {
        link.code = build_group_code(cfg.code_spec());
        link.init = build_initializer(cfg.K, cfg.init_style());
        link.candidates = build_candidate_set(link.codebook, *link.code);
    } else {
        link.psk = make_psk(cfg.M);
        link.candidates = build_candidate_set(link.codebook, *link.psk);
    }

    const int alphabet = tuple_alphabet(cfg);
    switch (cfg.patterns) {
        case PatternSource::optimized:
            link.patterns = select_patterns_stepwise_depletion(cfg.N, alphabet, cfg.K).set;
            break;
        case PatternSource::random:
            link.patterns = random_pattern_set(cfg.K, cfg.N);
            break;
        case PatternSource::file: {
            auto loaded = load_patterns(cfg.pattern_file);
            if (loaded.size() != static_cast<std::size_t>(cfg.K)) {
                throw std::invalid_argument("pattern file " + cfg.pattern_file.string() + " holds " +
                                            std::to_string(loaded.size()) + " patterns, K=" + std::to_string(cfg.K));
            }
            link.patterns = make_pattern_set(cfg.N, std::move(loaded));
            break;
        }
    }
    link.pattern_min_distance = min_tuple_distance(link.patterns.selected, alphabet);
    return link;
}

ChannelRealization frame_channel(const Link& link, std::uint64_t frame_index) {
    Philox4x32 rng(link.cfg.seed, frame_index, static_cast<std::uint32_t>(Substream::channel));
    return draw_channel(rng, link.cfg.N, link.cfg.Nr, link.patterns.selected);
}

FrameOutcome run_frame_on_channel(const Link& link, const ChannelRealization& channel, Philox4x32& rng,
                                  double sigma2) {
    const auto& cs = link.candidates;
    const CMatrix& H = channel.H;
    const std::uint32_t mask = static_cast<std::uint32_t>(cs.size() - 1);
    FrameOutcome out;
    out.info_bits = link.info_bits_per_frame();
    auto tally = [&out](std::size_t sent, std::size_t detected) {
        const int e = std::popcount(sent ^ detected);
        out.bit_errors += static_cast<std::uint64_t>(e);
        out.block_errors += e ? 1 : 0;
    };

    if (link.cfg.scheme == Scheme::ndrm) {
        const CoherentDetector detector(H, cs);
        for (int t = 1; t < link.cfg.T; ++t) {
            const std::size_t idx = rng() & mask;
            const CMatrix Y = add_awgn(rng, matmul(H, cs.matrices[idx]), sigma2);
            tally(idx, detector.detect(Y).index);
        }
        return out;
    }

    FrameState st = start_frame(link.cfg.scheme, link.cfg.K, static_cast<std::size_t>(link.cfg.T),
                                link.init ? &link.init->normalized_D : nullptr);
    CMatrix Y_prev = add_awgn(rng, matmul(H, st.V_prev), sigma2);
    for (int t = 1; t < link.cfg.T; ++t) {
        const std::size_t idx = rng() & mask;
        const CMatrix& V = encode_block(st, cs.matrices[idx]);
        CMatrix Y = add_awgn(rng, matmul(H, V), sigma2);
        tally(idx, cdd_detect(Y_prev, Y, cs).index);
        Y_prev = std::move(Y);
    }
    return out;
}

FrameOutcome run_frame(const Link& link, std::uint64_t frame_index, double sigma2, std::uint32_t noise_rep) {
    const ChannelRealization ch = frame_channel(link, frame_index);
    Philox4x32 rng(link.cfg.seed, frame_index, static_cast<std::uint32_t>(Substream::payload) + noise_rep);
    return run_frame_on_channel(link, ch, rng, sigma2);
}

double ebn0_to_sigma2(double ebn0_db, int K, int r) {
    if (r <= 0) throw std::invalid_argument("ebn0_to_sigma2: r must be > 0");
    if (K <= 0) throw std::invalid_argument("ebn0_to_sigma2: K must be > 0");
    const double rho = std::pow(10.0, ebn0_db / 10.0) * static_cast<double>(r) / static_cast<double>(K);
    return 1.0 / rho;
}

double snr_to_sigma2(double snr_db, SnrAxis axis, int K, int r) {
    if (axis == SnrAxis::per_bit) return ebn0_to_sigma2(snr_db, K, r);
    return 1.0 / std::pow(10.0, snr_db / 10.0);
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<FrameOutcome> run_frames(const Link& link, std::uint64_t first, std::uint64_t count, double sigma2,
                                     unsigned workers) {
    std::vector<FrameOutcome> out(count);
    workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(count, 1)));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = run_frame(link, first + i, sigma2);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        try {
            for (std::uint64_t i = next++; i < count; i = next++) out[i] = run_frame(link, first + i, sigma2);
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

SnrRecord run_point(const Link& link, double snr_db) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& cfg = link.cfg;
    SnrRecord rec;
    rec.snr_db = snr_db;
    rec.sigma2 = snr_to_sigma2(snr_db, cfg.axis, cfg.K, link.bits_per_block());
    rec.rho = 1.0 / rec.sigma2;

    const unsigned workers = resolve_workers(cfg.workers);
    const std::uint64_t batch = std::max<std::uint64_t>(64, 16ull * workers);
    std::uint64_t sum_sq = 0;
    bool done = false;
    while (!done) {
        std::uint64_t count = batch;
        if (cfg.max_frames > 0) count = std::min(count, cfg.max_frames - rec.frames);
        const auto outcomes = run_frames(link, rec.frames, count, rec.sigma2, workers);
        for (const auto& o : outcomes) {
            ++rec.frames;
            rec.bit_errors += o.bit_errors;
            rec.info_bits += o.info_bits;
            sum_sq += o.bit_errors * o.bit_errors;
            if (rec.bit_errors >= cfg.min_bit_errors || rec.info_bits >= cfg.max_info_bits ||
                (cfg.max_frames > 0 && rec.frames >= cfg.max_frames)) {
                done = true;
                break;
            }
        }
    }

    const double F = static_cast<double>(rec.frames);
    const double bits = static_cast<double>(link.info_bits_per_frame());
    rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.info_bits);
    if (rec.frames > 1) {
        const double mean = static_cast<double>(rec.bit_errors) / F;
        const double var = std::max(0.0, (static_cast<double>(sum_sq) - F * mean * mean) / (F - 1.0));
        rec.ber_stderr = std::sqrt(var / F) / bits;
    }
    rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

SimResult run_sweep(const SimConfig& cfg, const std::function<void(const SnrRecord&)>& on_point) {
    const Link link = build_link(cfg);
    SimResult res;
    res.config_hash = cfg.hash();
    res.seed = cfg.seed;
    for (double snr : cfg.snr_db) {
        res.records.push_back(run_point(link, snr));
        if (on_point) on_point(res.records.back());
    }
    return res;
}

BoundPoint evaluate_bound(const Link& link, double snr_db, std::size_t channels, std::uint32_t noise_reps) {
    if (channels == 0) throw std::invalid_argument("evaluate_bound: need at least one channel");
    BoundPoint bp;
    bp.snr_db = snr_db;
    bp.channels = channels;
    bp.sigma2 = snr_to_sigma2(snr_db, link.cfg.axis, link.cfg.K, link.bits_per_block());
    // The differential detector compares two noisy blocks; the coherent one sees
    // the channel noise once.
    const bool differential = link.cfg.scheme != Scheme::ndrm;
    const double sigma2_eff = differential ? differential_noise_variance(bp.sigma2) : bp.sigma2;
    double total = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
        const ChannelRealization ch = frame_channel(link, c);
        const CMatrix H = link.init ? matmul(ch.H, link.init->normalized_D) : ch.H;
        total += union_bound_ber(H, link.candidates, sigma2_eff);
        for (std::uint32_t rep = 0; rep < noise_reps; ++rep) {
            Philox4x32 rng(link.cfg.seed, c, static_cast<std::uint32_t>(Substream::payload) + rep);
            const FrameOutcome o = run_frame_on_channel(link, ch, rng, bp.sigma2);
            bp.sim_bit_errors += o.bit_errors;
            bp.sim_info_bits += o.info_bits;
        }
    }
    bp.bound = total / static_cast<double>(channels);
    bp.bound_per_bit = bp.bound / link.bits_per_block();
    bp.sim_ber = bp.sim_info_bits ? static_cast<double>(bp.sim_bit_errors) / static_cast<double>(bp.sim_info_bits) : 0.0;
    return bp;
}

}  // namespace drmsim
