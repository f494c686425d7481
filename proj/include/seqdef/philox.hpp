#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace seqdef {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by a 64-bit seed (the key) and a 64-bit stream id
/// (the upper half of the counter). Block b of stream s is
/// philox(counter = {b_lo, b_hi, s_lo, s_hi}, key = {seed_lo, seed_hi}); the
/// four 32-bit words of each block are consumed in order. Every derived draw
/// (uniform01, below, bernoulli) is defined on top of next_u64() so ports in
/// other languages can reproduce streams exactly.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block apply(Block counter, Key key);
};

class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

    std::uint32_t next_u32();
    /// High word first: (w0 << 32) | w1.
    std::uint64_t next_u64();
    /// (next_u64() >> 11) * 2^-53, in [0, 1).
    double uniform01();
    /// Uniform integer in [0, bound) by Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound);
    /// uniform01() < p.
    bool bernoulli(double p);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_index_ = 0;
    Philox4x32::Block buffer_{};
    int used_ = 4;
};

/// In-place Fisher-Yates, walking from the back: swap(v[i], v[below(i + 1)]).
template <typename Container>
void shuffle(Container& values, RandomStream& rng)
{
    using std::swap;
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        swap(values[i - 1], values[j]);
    }
}

}  // namespace seqdef
