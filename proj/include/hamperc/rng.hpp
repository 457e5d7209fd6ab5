#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hamperc {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
//
// The 64-bit seed is the key; the 128-bit counter is split into a 64-bit
// stream id (high half) and a 64-bit block position (low half), so stream
// (seed, r) is an independent, reproducible sequence for every replica r.
// Satisfies UniformRandomBitGenerator.
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() noexcept { return 1.0 - uniform(); }
    // Uniform integer on [0, bound); bound > 0. Lemire's nearly-divisionless method.
    std::uint64_t below(std::uint64_t bound) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    // One raw Philox4x32-10 bijection; exposed for known-answer tests.
    static Block encrypt(Block counter, Key key) noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t position_ = 0;
    Block buffer_{};
    unsigned used_ = 4;
};

using Rng = Philox4x32;

} // namespace hamperc
