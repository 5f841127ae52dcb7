#pragma once

#include <cstdint>
#include <cmath>

namespace rcq {

// splitmix64 step; used both as a stand-alone mixer and to seed xoshiro.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with an explicit, platform-independent Gaussian generator
// (Box-Muller).  std::normal_distribution is implementation-defined, which
// would break the bit-identical reproducibility the simulator promises, so
// the whole sampling path is spelled out here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    // Stream derivation for frame-parallel simulation: one independent
    // generator per (seed, snr index, frame index), so any worker layout
    // produces the same noise.
    static Rng for_frame(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t frame_index) {
        std::uint64_t sm = seed;
        std::uint64_t a = splitmix64(sm);
        sm ^= 0x6a09e667f3bcc909ULL + snr_index * 0xd1342543de82ef95ULL;
        std::uint64_t b = splitmix64(sm);
        sm ^= 0xbb67ae8584caa73bULL + frame_index * 0x2545f4914f6cdd1dULL;
        std::uint64_t c = splitmix64(sm);
        return Rng(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c << 1));
    }

    std::uint64_t next_u64() {
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

    // Uniform in (0, 1]: never 0, so it can feed a logarithm directly.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rcq
