#pragma once
// Deterministic, platform-independent pseudo-random stream seeded by one
// 64-bit value.  std::uniform_int_distribution is not bit-reproducible across
// standard libraries, so bounded draws are done by hand.
#include <cstdint>

namespace pal {

class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    // splitmix64 step
    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) via rejection; bound > 0
    uint64_t below(uint64_t bound) {
        uint64_t thresh = (0 - bound) % bound;
        while (true) {
            uint64_t r = next();
            if (r >= thresh) return r % bound;
        }
    }

    int range(int lo, int hi) { // inclusive ends
        return lo + int(below(uint64_t(hi - lo + 1)));
    }

    bool coin() { return next() & 1; }

    // derive an independent child stream (for per-object seeding)
    Rng fork() { return Rng(next() ^ 0xa5a5a5a5deadbeefULL); }

private:
    uint64_t s_;
};

} // namespace pal
