#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace transnli {

// Deterministic generator (xoshiro256** seeded through splitmix64).
// The standard <random> engines are portable but the distributions are not,
// and emitted datasets must be byte-identical across platforms, so all
// sampling helpers live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    bool coin() { return below(2) == 1; }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Independent substream keyed by (root seed, label). Derivation ignores
    // the current draw position, so toggling one pipeline stage does not
    // perturb the streams of the others.
    Rng derive(std::string_view label) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        std::uint64_t x = seed_ ^ h;
        return Rng(splitmix64(x));
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(below(items.size()))];
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t state_[4];
};

}  // namespace transnli
