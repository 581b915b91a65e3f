#pragma once

#include <cmath>
#include <cstdint>

namespace wew {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Hash-derived substream seed: realizations and purposes get independent
// streams without any shared RNG state.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t seed_id,
                                    std::uint64_t tag) {
    std::uint64_t s = master_seed;
    std::uint64_t h = splitmix64(s);
    s = h ^ (0x9E3779B97F4A7C15ULL * (seed_id + 1));
    h = splitmix64(s);
    s = h ^ (0xD1B54A32D192ED03ULL * (tag + 1));
    return splitmix64(s);
}

// xoshiro256++ with splitmix64 state expansion. Deterministic and
// platform-independent at the integer level.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // N(0, 1) via Box-Muller; consumes two uniforms per pair.
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace wew
