#pragma once

#include <cmath>
#include <cstdint>

namespace costaff {

// xoshiro256++ seeded through splitmix64. Chosen over std distributions so
// that streams are bit-identical across standard libraries; exponential
// variates come from inversion of the top 53 bits.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& si : s_) si = splitmix64(x);
    }

    // Substream for an independent replication.
    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t replication) {
        std::uint64_t x = seed;
        const std::uint64_t mixed = splitmix64(x) ^ (0x9e3779b97f4a7c15ULL * (replication + 1));
        return Xoshiro256pp(mixed);
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

    // Uniform on (0, 1]; never returns 0, so log() below is safe.
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    double exponential(double rate) {
        return -std::log(uniform01()) / rate;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

}  // namespace costaff
