#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace drmsim {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is identified by (seed, stream id, substream); every draw is a
// pure function of those and the position within the stream, so frames can
// be simulated in any order on any number of threads with identical output.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    Philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    std::uint64_t draws() const noexcept { return draws_; }

    // Single-block evaluation; exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned index_ = 4;
    std::uint64_t draws_ = 0;
};

// Substream ids used by the simulator so channel draws stay fixed while the
// payload/noise streams vary.
enum class Substream : std::uint32_t {
    channel = 0,
    payload = 1,
};

}  // namespace drmsim
