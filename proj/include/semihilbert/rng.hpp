#pragma once

#include "semihilbert/linalg.hpp"

#include <cstdint>
#include <random>

namespace semihilbert {

/// Seeded generator whose child streams are derived by hashing
/// (seed, stream id), so independent consumers never share a sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

    double normal() { return normal_(engine_); }
    double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * unit_(engine_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    /// Standard complex Gaussian matrix.
    CMatrix gaussian(Eigen::Index rows, Eigen::Index cols);

    /// Uniformly distributed unit vector of C^dim.
    CVector unit_vector(Eigen::Index dim);

    static std::uint64_t mix(std::uint64_t x) noexcept {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

inline CMatrix Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
}

inline CVector Rng::unit_vector(Eigen::Index dim) {
    CVector v(dim);
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal();
        norm = v.norm();
    } while (norm < 1e-300);
    return v / norm;
}

} // namespace semihilbert
