#ifndef AAM_RNG_HPP
#define AAM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace aam {

// Deterministic PRNG (splitmix64 core) with hand-rolled distributions so that
// streams are bit-identical across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return next_u64() % n;
    }

    // Standard normal via Box-Muller; one value per call, cached pair discarded
    // deliberately so call counts map 1:1 to stream positions.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent substream for (seed, stream-id) pairs, e.g. per-record work.
    static Rng fork(std::uint64_t seed, std::uint64_t stream) {
        Rng mix(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
        mix.next_u64();
        return mix;
    }

private:
    std::uint64_t state_;
};

} // namespace aam

#endif
