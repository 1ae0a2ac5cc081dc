// rng.hpp - deterministic per-trial random streams
//
// Every Monte Carlo draw in the simulator comes from a stream derived as
// mix(seed, salt..., trial). Streams are value types: workers get their own
// copies, so results are independent of thread count.

#pragma once

#include <cstdint>
#include <random>

namespace afdm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hash-combine a seed with stream coordinates (salt, trial index, ...).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                   std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

/// Seeded random stream with explicitly coded uniform/Gaussian draws, so the
/// emitted sequence is fixed by this file rather than by library internals.
class Rng {
public:
    explicit Rng(std::uint64_t stream_id) : engine_(splitmix64(stream_id)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() & 1u); }

    /// Standard normal pair via Box-Muller.
    void gaussian_pair(double& g1, double& g2) {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 6.283185307179586476925286766559 * u2;
        g1 = r * std::cos(phi);
        g2 = r * std::sin(phi);
    }

private:
    std::mt19937_64 engine_;
};

// stream salts; together with the derivation above they fully determine
// every output file
inline constexpr std::uint64_t kSaltDataBlock = 1;  // payload symbol draws
inline constexpr std::uint64_t kSaltChannel = 2;    // per-trial channel draws
inline constexpr std::uint64_t kSaltNoise = 3;      // per-trial AWGN draws
inline constexpr std::uint64_t kSaltAux = 4;        // test-local independent draws

}  // namespace afdm
