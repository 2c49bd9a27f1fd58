#pragma once

// Deterministic, platform-independent random streams (splitmix64 seeding,
// xoshiro256** core).  Streams are derived by index so parallel partitions
// reproduce the single-threaded results exactly.

#include "common.hpp"

namespace diagsys {

inline u64 splitmix64_next(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline u64 mix_seed(u64 seed, u64 stream) {
    u64 s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    splitmix64_next(s);
    return splitmix64_next(s);
}

class Xoshiro256ss {
  public:
    explicit Xoshiro256ss(u64 seed) {
        u64 sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    u64 next() {
        auto rotl = [](u64 x, int k) { return (x << k) | (x >> (64 - k)); };
        u64 result = rotl(s_[1] * 5, 7) * 9;
        u64 t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    i64 below(i64 n) {  // uniform in [0, n)
        return i64(next() % u64(n));
    }

  private:
    u64 s_[4];
};

}  // namespace diagsys
