#ifndef OFFSCREEN_RNG_HPP
#define OFFSCREEN_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace offscreen {

/// Philox4x32-10 block function (Salmon et al., Random123).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

/// Deterministic stream keyed by a master seed and a derivation path.
///
/// The path hashes to the Philox key and the master seed fills the upper half
/// of the counter, so every (seed, path) pair names an independent stream that
/// reproduces bit-for-bit on any platform. All derived quantities (doubles,
/// bounded integers, shuffles, normals) are computed here rather than through
/// <random> distributions, whose algorithms are implementation-defined.
class Rng {
public:
    using result_type = std::uint32_t;

    Rng(std::uint64_t master_seed, std::string path);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u32(); }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [0, n); n must be positive.
    std::uint32_t below(std::uint32_t n);
    /// Standard normal via Box-Muller.
    double normal();
    bool coin() { return (next_u32() & 1U) != 0; }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(static_cast<std::uint32_t>(i)));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Child stream at `path + "/" + name` under the same master seed.
    Rng derive(std::string_view name) const;

    std::uint64_t master_seed() const { return seed_; }
    const std::string& path() const { return path_; }

private:
    void refill();

    std::uint64_t seed_;
    std::string path_;
    Philox4x32::Key key_;
    std::uint64_t block_index_{0};
    Philox4x32::Counter buffer_{};
    std::size_t used_{4};
};

}  // namespace offscreen

#endif  // OFFSCREEN_RNG_HPP
