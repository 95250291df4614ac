#ifndef SECGAME_RNG_HPP
#define SECGAME_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace secgame {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic seed derivation. Every random stream in an experiment is
/// keyed by (root seed, label, index), so results do not depend on worker
/// count or evaluation order.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                                 std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(root);
    for (unsigned char c : label)
        h = splitmix64(h ^ c);
    return splitmix64(h ^ splitmix64(index));
}

/// mt19937_64 plus hand-rolled transforms. The standard distribution objects
/// are implementation-defined, which would break byte-identical replay across
/// standard libraries; everything here is pinned.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    /// Index draw from an (unnormalized is fine) probability mass vector.
    std::size_t sample_pmf(const std::vector<double>& pmf) {
        double total = 0.0;
        for (double p : pmf) total += p;
        double u = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
            acc += pmf[i];
            if (u < acc) return i;
        }
        return pmf.empty() ? 0 : pmf.size() - 1;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1))]);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace secgame

#endif
