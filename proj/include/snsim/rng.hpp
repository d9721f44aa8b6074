#pragma once
// Deterministic labeled random substreams. Every random decision in a run
// flows through an RngStream, so a (master seed, stream label, draw index)
// triple fully determines a variate regardless of how many draws other
// streams made. The generator is counter-based (splitmix64 over an
// incrementing state), which keeps sequences stable across platforms.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace snsim {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace detail

class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view label)
        : state_(detail::mix64(seed ^ detail::mix64(detail::fnv1a64(label)))) {}

    std::uint64_t next_u64() {
        draws_++;
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Modulo reduction; the bias at the stream's
    /// argument sizes (n <= a few thousand) is below 1e-15 and irrelevant here.
    std::uint64_t bounded(std::uint64_t n) { return next_u64() % n; }

    /// Box-Muller, cosine branch; consumes exactly two uniforms per call.
    double normal(double mean, double sd) {
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    /// Inverse-CDF exponential; consumes exactly one uniform.
    double exponential(double rate) { return -std::log(next_unit_open()) / rate; }

    std::uint64_t draw_count() const { return draws_; }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

/// Half-away-from-zero integer rounding (what std::round does).
inline int round_half_away(double x) { return static_cast<int>(std::lround(x)); }

inline int clamp_int(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// Normal draw, rounded half away from zero, then saturated to [lo, hi].
inline int sample_normal_clamped(double mean, double sd, int lo, int hi, RngStream& rng) {
    return clamp_int(round_half_away(rng.normal(mean, sd)), lo, hi);
}

/// Erlang(shape, rate) as a sum of `shape` exponentials, rounded half away
/// from zero, then saturated to [lo, hi]. Er(k, r) here means shape k and
/// rate r (mean k / r).
inline int sample_erlang_clamped(int shape, double rate, int lo, int hi, RngStream& rng) {
    double sum = 0.0;
    for (int i = 0; i < shape; ++i) sum += rng.exponential(rate);
    return clamp_int(round_half_away(sum), lo, hi);
}

struct PersonaParameters {
    int attention;
    int range;
    int depth;
};

/// Draws the three search-behavior parameters in the fixed order
/// (attention, range, depth): attention, range ~ round(N(5,1)) in [1,10],
/// depth ~ round(Er(3,1)) in [0,6].
inline PersonaParameters assign_parameters(RngStream& rng) {
    PersonaParameters p{};
    p.attention = sample_normal_clamped(5.0, 1.0, 1, 10, rng);
    p.range = sample_normal_clamped(5.0, 1.0, 1, 10, rng);
    p.depth = sample_erlang_clamped(3, 1.0, 0, 6, rng);
    return p;
}

}  // namespace snsim
