#pragma once

#include <cstdint>
#include <random>

namespace qdent {

// Seeded random stream addressed by (master_seed, stream_index).
// Equal addresses replay the identical variate sequence; distinct stream
// indices give statistically independent streams, which is how replications
// are parallelized without any cross-thread state.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_(master_seed), index_(stream_index) {
        std::seed_seq seq{master_seed, stream_index};
        engine_.seed(seq);
    }

    std::uint64_t master_seed() const noexcept { return master_; }
    std::uint64_t stream_index() const noexcept { return index_; }

    // Uniform draw strictly inside (0,1), safe to pass to any quantile function.
    double uniform() {
        const std::uint64_t bits = engine_() >> 11; // top 53 bits
        return static_cast<double>(bits) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Independent child stream keyed by an extra salt. Consuming from the
    // child does not advance this stream.
    RngStream substream(std::uint64_t salt) const {
        RngStream child(master_, index_);
        std::seed_seq seq{master_, index_, salt};
        child.engine_.seed(seq);
        return child;
    }

private:
    std::uint64_t master_;
    std::uint64_t index_;
    std::mt19937_64 engine_;
};

} // namespace qdent
