#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace sic {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Runtime failures callers may want to tell apart. Precondition violations
// throw std::invalid_argument.
struct sync_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct format_error : std::runtime_error {  // corrupt or truncated file
    using std::runtime_error::runtime_error;
};
struct shape_error : std::runtime_error {  // array dims disagree with header
    using std::runtime_error::runtime_error;
};
struct rank_error : std::runtime_error {  // degenerate LS design matrix
    using std::runtime_error::runtime_error;
};
struct train_error : std::runtime_error {  // loss diverged
    using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic RNG. Same seed gives the same draw sequence on every run;
// shuffling and Gaussian sampling are implemented here rather than with
// std distributions so the sequence does not depend on the libstdc++
// version either.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1)
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform index in [0, n)
    std::size_t index(std::size_t n) {
        return std::size_t((__uint128_t(gen_()) * n) >> 64);
    }

    // standard normal, Box-Muller
    double gaussian() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // circular complex Gaussian, per-component std dev sigma
    cplx cgaussian(double sigma) {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        double r = sigma * std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    // independent child stream, e.g. one per experiment cell
    Rng child(std::uint64_t stream) const {
        return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
    }

    // deterministic Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace sic
