#pragma once

#include "semihilbert/metric.hpp"

#include <cstdint>
#include <string_view>

namespace semihilbert {

enum class Method { exact_svd, theta_sweep, multistart, oracle, closed_form };

std::string_view to_string(Method method) noexcept;

/// A computed radius with the unit coordinate vector that attains it.
///
/// `maximizer` lives in C^r (coordinates on range(A)); `witness` is the same
/// point as an ambient A-unit vector, x = (A^{1/2})†·basis·c. Any x + k with
/// k ∈ N(A) attains the same value; the reported witness has no N(A) part.
/// For crawford and min_modulus the "maximizer" is the minimizing vector.
struct RadiusEstimate {
    double value = 0.0;
    CVector maximizer;
    CVector witness;
    Method method = Method::exact_svd;
    int iterations = 0;
    double residual = 0.0;
    bool warning = false;
};

inline constexpr int kNumradGrid = 1440;

struct CrawfordOptions {
    int random_starts = 16;
    std::uint64_t seed = 0xc4a3f0dULL;
    int max_iterations = 5000;
    int support_grid = 720;
};

struct DwOptions {
    int random_starts = 32;
    std::uint64_t seed = 0xd3a11e7ULL;
    int max_iterations = 3000;
    double gradient_tol = 1e-10;
};

enum class Objective { dw, crawford, numrad };

inline constexpr Eigen::Index kOracleMaxRank = 6;

/// ‖T‖_A: largest singular value of the compressed W.
RadiusEstimate op_seminorm(const Metric& m, const CMatrix& t);

/// m_A(T): smallest singular value of W over range(A) coordinates.
RadiusEstimate min_modulus(const Metric& m, const CMatrix& t);

/// w_A(T) = max_θ λ_max(Re(e^{iθ}N)) over θ ∈ [0, 2π).
RadiusEstimate numerical_radius(const Metric& m, const CMatrix& t, int grid = kNumradGrid);

/// c_A(T): distance from 0 to the numerical range of N, minimized by
/// multi-start projected gradient descent on |c*Nc|².
RadiusEstimate crawford(const Metric& m, const CMatrix& t, const CrawfordOptions& opts = {});

/// dw_A(T) = sup √(|c*Nc|² + ‖Wc‖⁴) over unit c, by multi-start ascent.
RadiusEstimate dw_radius(const Metric& m, const CMatrix& t, const DwOptions& opts = {});

/// Sampling ground truth: `samples` seeded uniform unit vectors followed by
/// derivative-free local refinement of the best ten.
RadiusEstimate oracle_extremum(const Metric& m, const CMatrix& t, Objective objective, int samples,
                               std::uint64_t seed);

/// The same functionals on an already compressed operator. Witnesses are
/// left empty; `maximizer` is in C^r.
namespace compressed {

double quadratic_form_modulus(const CMatrix& n, const CVector& c);
double dw_objective(const Compressed& op, const CVector& c);
double objective(const Compressed& op, Objective objective, const CVector& c);

RadiusEstimate seminorm(const Compressed& op);
RadiusEstimate min_modulus(const Compressed& op);
RadiusEstimate numerical_radius(const CMatrix& n, int grid = kNumradGrid);
RadiusEstimate crawford(const CMatrix& n, const CrawfordOptions& opts = {});
RadiusEstimate dw_radius(const Compressed& op, const DwOptions& opts = {});
RadiusEstimate oracle(const Compressed& op, Objective objective, int samples, std::uint64_t seed);

/// Operator whose compression is `n` under the identity metric.
inline Compressed from_square(const CMatrix& n) { return Compressed{n, n}; }

} // namespace compressed

} // namespace semihilbert
