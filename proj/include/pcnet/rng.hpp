#pragma once

#include <cstdint>
#include <vector>

namespace pcnet {

// 64-bit finalizer with the SplitMix64 constants (Steele, Lea & Flood 2014,
// as published in Vigna's splitmix64.c). Bijective on uint64, so distinct
// inputs give distinct, well-scrambled outputs.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream seeds: fold each extra word through the finalizer.
// mix_seed(s, a) realizes the mix64(seed, index) derivation used for
// per-realization and per-run streams.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a) noexcept {
    return mix64(seed ^ mix64(a));
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    return mix_seed(mix_seed(seed, a), b);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) noexcept {
    return mix_seed(mix_seed(seed, a, b), c);
}

/// Small deterministic PRNG (SplitMix64 stream). Self-contained so that
/// sequences are reproducible across compilers and platforms, unlike the
/// standard-library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return next_double() < p; }

    /// Uniform integer in [0, n). Unbiased (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t n) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = -n % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// O(1) sampling from a fixed discrete distribution (Vose's alias method).
/// Construction is deterministic: ties and worklists are processed in index order.
class DiscreteSampler {
public:
    explicit DiscreteSampler(const std::vector<double>& weights);

    std::size_t sample(Rng& rng) const noexcept {
        const std::size_t i = static_cast<std::size_t>(rng.below(prob_.size()));
        return rng.next_double() < prob_[i] ? i : alias_[i];
    }

    std::size_t size() const noexcept { return prob_.size(); }

    /// Exact selection probability of index i (for tests).
    double probability(std::size_t i) const noexcept { return norm_[i]; }

private:
    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
    std::vector<double> norm_;
};

}  // namespace pcnet
