#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace pmg {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stable per-index stream derivation; transcripts freeze these values, so the
// mixing must never change.
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    return splitmix64(splitmix64(base) ^ splitmix64(index * 0xD1B54A32D192ED03ULL + 1));
}

// mt19937_64 + masked-rejection bounded draws. std::uniform_int_distribution is
// not portable across standard libraries; this is, and transcripts depend on it.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, bound), bound >= 1.
    uint64_t below(uint64_t bound) {
        assert(bound >= 1);
        if (bound == 1) return 0;
        const uint64_t mask = ~uint64_t{0} >> std::countl_zero(bound - 1);
        uint64_t r;
        do {
            r = eng_() & mask;
        } while (r >= bound);
        return r;
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        assert(!xs.empty());
        return xs[below(xs.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& xs) {
        for (size_t i = xs.size(); i > 1; --i) {
            size_t j = below(i);
            std::swap(xs[i - 1], xs[j]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace pmg
