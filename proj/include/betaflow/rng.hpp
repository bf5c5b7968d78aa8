#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace betaflow {

/// splitmix64 finalizer; also used to derive child stream identifiers.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic xoshiro256++ stream keyed by (seed, stream_id).
/// Identical keys reproduce the identical draw sequence; distinct stream
/// ids of the same seed give statistically independent streams, which is
/// what the parallel Monte Carlo drivers rely on.
class RngStream {
  public:
    RngStream() : RngStream(0u, 0u) {}

    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        std::uint64_t z = seed ^ mix64(stream_id ^ 0x6a09e667f3bcc909ull);
        bool all_zero = true;
        for (auto& w : state_) {
            z = mix64(z);
            w = z;
            all_zero = all_zero && w == 0;
        }
        if (all_zero) state_[0] = 0x9e3779b97f4a7c15ull;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Derived stream; reproducible from the parent key alone.
    RngStream child(std::uint64_t substream) const {
        return RngStream(seed_, mix64(stream_id_ ^ mix64(substream)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw on the open interval (0,1); exact 0 is resampled.
    double uniform() {
        for (;;) {
            const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        for (;;) {
            const double u = 2.0 * uniform() - 1.0;
            const double v = 2.0 * uniform() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    /// Fair sign.
    bool coin() { return (next_u64() >> 63) != 0; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace betaflow
