#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drmsim/group_codes.hpp"
#include "drmsim/mapping.hpp"
#include "drmsim/ris_channel.hpp"
#include "drmsim/rng.hpp"
#include "drmsim/transceiver.hpp"

namespace drmsim {

// What the SNR grid values mean. per_symbol: rho = 1/sigma^2 per transmitted
// slot (the figures' axis); per_bit: Eb/N0 = rho * K / r.
enum class SnrAxis { per_symbol, per_bit };

std::string to_string(SnrAxis axis);
SnrAxis parse_snr_axis(const std::string& text);

enum class PatternSource { optimized, random, file };

std::string to_string(PatternSource src);

struct SimConfig {
    Scheme scheme = Scheme::drm;
    int K = 2;
    int M = 2;
    // DRM-DSTM only. An empty u picks the shipped table row for (kind, M, K).
    CodeKind code_kind = CodeKind::cyclic;
    std::vector<int> u;
    std::optional<InitStyle> init;  // defaults per K
    int N = 4;
    int Nr = 3;
    int T = 100;
    PatternSource patterns = PatternSource::optimized;
    std::filesystem::path pattern_file;
    std::filesystem::path codebook_file;  // empty: built-in codebook
    std::vector<double> snr_db{0.0};
    SnrAxis axis = SnrAxis::per_symbol;
    std::uint64_t min_bit_errors = 200;
    std::uint64_t max_info_bits = 10'000'000;
    std::uint64_t max_frames = 0;  // 0: no frame cap
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: hardware concurrency

    void validate() const;
    // DRM-DSTM code spec with M and K filled in and u resolved.
    GroupCodeSpec code_spec() const;
    InitStyle init_style() const { return init.value_or(default_init_style(K)); }
    // Canonical key=value lines covering every field that affects results.
    std::string manifest() const;
    std::uint64_t hash() const;
};

// Everything a frame needs, derived once from a config and then shared
// read-only between workers.
struct Link {
    SimConfig cfg;
    PermutationCodebook codebook;
    std::optional<PskConstellation> psk;
    std::optional<GroupCode> code;
    std::optional<InitializerD> init;
    ReflectingPatternSet patterns;
    double pattern_min_distance = 0.0;
    CandidateSet candidates;

    int bits_per_block() const noexcept { return candidates.bits_per_block(); }
    std::uint64_t info_bits_per_frame() const noexcept {
        return static_cast<std::uint64_t>(cfg.T - 1) * static_cast<std::uint64_t>(bits_per_block());
    }
};

Link build_link(const SimConfig& cfg);

struct FrameOutcome {
    std::uint64_t bit_errors = 0;
    std::uint64_t info_bits = 0;
    std::uint64_t block_errors = 0;
};

// One frame: channel from (seed, frame, channel substream), payload and noise
// from (seed, frame, payload substream + noise_rep).
FrameOutcome run_frame(const Link& link, std::uint64_t frame_index, double sigma2, std::uint32_t noise_rep = 0);
// Same loop on a caller-supplied channel.
FrameOutcome run_frame_on_channel(const Link& link, const ChannelRealization& channel, Philox4x32& rng,
                                  double sigma2);
ChannelRealization frame_channel(const Link& link, std::uint64_t frame_index);

double ebn0_to_sigma2(double ebn0_db, int K, int r);
double snr_to_sigma2(double snr_db, SnrAxis axis, int K, int r);

struct SnrRecord {
    double snr_db = 0.0;
    double rho = 0.0;  // 1 / sigma^2
    double sigma2 = 0.0;
    std::uint64_t info_bits = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double ber_stderr = 0.0;  // from the spread of per-frame error counts
    std::uint64_t frames = 0;
    double elapsed_s = 0.0;
};

struct SimResult {
    std::vector<SnrRecord> records;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

// Runs frames [first, first + count) at one noise level on `workers` threads.
// Outcomes are returned in frame order.
std::vector<FrameOutcome> run_frames(const Link& link, std::uint64_t first, std::uint64_t count, double sigma2,
                                     unsigned workers);

// Accumulates frames 0, 1, 2, ... until the error target, the bit budget or
// the frame cap is reached. The stopping frame is found by scanning outcomes
// in frame order, so the result does not depend on the worker count.
SnrRecord run_point(const Link& link, double snr_db);
SimResult run_sweep(const SimConfig& cfg, const std::function<void(const SnrRecord&)>& on_point = {});

unsigned resolve_workers(unsigned requested);

// Union bound averaged over the channels of frames 0..channels-1, next to the
// BER simulated on those same channels with noise_reps noise draws each.
struct BoundPoint {
    double snr_db = 0.0;
    double sigma2 = 0.0;
    std::size_t channels = 0;
    double bound = 0.0;          // summed Hamming weights, as printed for the bound
    double bound_per_bit = 0.0;  // the same divided by the bits per block
    std::uint64_t sim_bit_errors = 0;
    std::uint64_t sim_info_bits = 0;
    double sim_ber = 0.0;
};

BoundPoint evaluate_bound(const Link& link, double snr_db, std::size_t channels, std::uint32_t noise_reps);

}  // namespace drmsim
