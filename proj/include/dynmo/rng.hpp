#ifndef DYNMO_RNG_HPP
#define DYNMO_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace dynmo {

// Reproducible random stream keyed by (seed, stream id).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard; the distributions below are implemented here rather than taken
// from <random> because those are implementation-defined and would break
// cross-platform reproducibility.
//
// Streams are split hierarchically: split(k) derives an independent child
// stream from this stream's key without consuming any draws, so the child
// sequence does not depend on how many numbers the parent has produced.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    [[nodiscard]] RngStream split(std::uint64_t child) const;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);

    // Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    // Standard normal via the Marsaglia polar method.
    double normal();

    // k distinct indices from [0, n) in draw order (partial Fisher-Yates).
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace dynmo

#endif
