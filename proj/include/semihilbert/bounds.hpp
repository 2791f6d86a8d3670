#pragma once

#include "semihilbert/radii.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semihilbert {

enum class BoundKind { lower, upper, exact };

std::string_view to_string(BoundKind kind) noexcept;

/// One evaluated inequality. `anchor` is the inequality written out in
/// plain text; `params` records the scalars and grids behind the value.
struct BoundRecord {
    std::string name;
    std::string anchor;
    BoundKind kind = BoundKind::upper;
    double value = 0.0;
    double reference_dw = 0.0;
    bool applicable = true;
    bool graded = false;
    bool satisfied = true;
    double gap = 0.0;   // value − dw for upper, dw − value for lower
    std::vector<std::pair<std::string, double>> params;
    std::string note;
};

/// Equality characterization check: the two conditions of a biconditional,
/// their residuals, and whether they agree.
struct Diagnostic {
    std::string name;
    bool applicable = true;
    bool condition_a = false;
    bool condition_b = false;
    double residual_a = 0.0;
    double residual_b = 0.0;
    bool consistent = true;
    CVector witness;   // ambient witness when the check produces one
    std::string note;
};

inline double tol_verify(double dw) { return 1e-6 * (1.0 + dw); }

/// Sets reference_dw, gap and satisfied against `dw` with tolerance `tol`.
void grade(BoundRecord& record, double dw, double tol);

struct ThetaSweepOptions {
    int grid = 360;
    double width = 1e-10;
    /// Evaluate w(e^{iθ}T + |T|²) by a full inner sweep at every θ instead of
    /// the equivalent single sweep of λ_max(Re(e^{iθ}N_T) + N_S). Slow; used
    /// to cross-check the reduction.
    bool nested = false;
    int inner_grid = 360;
};

struct LambdaThetaOptions {
    int lambda_points = 41;
    int theta_grid = 360;
    double width = 1e-10;
};

struct LambdaComplexOptions {
    int phases = 8;
    int radii = 5;
};

/// Lower max(w, ‖T‖²) and upper √(w² + ‖T‖⁴).
std::pair<BoundRecord, BoundRecord> sandwich(const Metric& m, const CMatrix& t);

/// √(w² + c²(|T|²)), √(‖T‖⁴ + c²(T)), √(2w·c(|T|²)), √(2c(T)‖T‖²).
std::array<BoundRecord, 4> lower_crawford(const Metric& m, const CMatrix& t);

/// √(sup_θ w²(e^{iθ}T + |T|²) − 2c(T)m²(T)).
BoundRecord upper_theta_sweep(const Metric& m, const CMatrix& t, const ThetaSweepOptions& opts = {});

/// Lower √(½(w²(T+|T|²) + c²(T−|T|²))), upper √(½(w²(T+|T|²) + w²(T−|T|²))).
std::pair<BoundRecord, BoundRecord> cartesian_half(const Metric& m, const CMatrix& t);

/// (i) √‖|T|² + (|T|²)^♯|T|²‖, (ii) √(½(w(T²) + ‖T‖²) + ‖T‖⁴).
std::pair<BoundRecord, BoundRecord> upper_buzano(const Metric& m, const CMatrix& t);

/// √(3‖S^♯S + S‖ − c(S+T)m(S+T) − c(S−T)m(S−T)), S = |T|².
BoundRecord upper_triple(const Metric& m, const CMatrix& t);

/// Minimum over a real λ grid of the θ-supremum; second record is λ = 0.
std::pair<BoundRecord, BoundRecord> upper_lambda_theta(const Metric& m, const CMatrix& t,
                                                       const LambdaThetaOptions& opts = {});

/// Minimum over a complex λ grid; second record is λ = 0, which equals the
/// sandwich upper bound.
std::pair<BoundRecord, BoundRecord> upper_lambda_complex(const Metric& m, const CMatrix& t,
                                                         const LambdaComplexOptions& opts = {});

/// dw(X) + dw(Y) + w(X^♯Y + Y^♯X) for dw(X + Y); the second record is
/// dw(X) + dw(Y), present when A(X^♯Y + Y^♯X) vanishes.
std::pair<BoundRecord, std::optional<BoundRecord>> sum_upper(const Metric& m, const CMatrix& x, const CMatrix& y);

/// √(2s + 4s²) with s = dw(X) + dw(Y).
BoundRecord feki_sum_upper(const Metric& m, const CMatrix& x, const CMatrix& y);

/// Bound on dw of [[O, X], [Y, O]] under diag(A, A).
BoundRecord offdiag_upper(const Metric& m, const CMatrix& x, const CMatrix& y);

/// w of [[O, X], [Y, O]] under diag(A, A).
double offdiag_alpha(const Metric& m, const CMatrix& x, const CMatrix& y);

/// P X Q^♯ ± Q Y P^♯ (sign = +1 or −1).
CMatrix product_sum_target(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x,
                           const CMatrix& y, int sign);

/// √((t²‖P‖² + ‖Q‖²/t²)² ((t²‖PX‖² + ‖QY‖²/t²)² + α²)) bounding dw of the
/// product-sum target. Throws Errc::zero_t for t = 0.
BoundRecord product_sum_upper(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x,
                              const CMatrix& y, double t, int sign);

/// The same bound at t = √(‖Q‖/‖P‖) and at t = √(‖QY‖/‖PX‖), evaluated from
/// their simplified forms. Throw Errc::degenerate_norm when the required
/// seminorms vanish.
BoundRecord product_sum_upper_b(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x,
                                const CMatrix& y, int sign);
BoundRecord product_sum_upper_c(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x,
                                const CMatrix& y, int sign);

/// w = ‖T‖ iff dw = √(w² + ‖T‖⁴); witness is a unit vector attaining both
/// w and ‖T‖ when T is normaloid.
Diagnostic normaloid_equality_check(const Metric& m, const CMatrix& t, double tol = 1e-6);
/// AT = 0 iff dw = w.
Diagnostic zero_equality_check(const Metric& m, const CMatrix& t, double tol = 1e-6);
/// If dw = ‖T‖², every seminorm maximizer x has ⟨Tx, x⟩_A = 0. Checked on an
/// orthonormal basis of the top singular subspace; residual_b is the largest
/// |⟨Tx, x⟩_A| found there.
Diagnostic norm_sq_equality_check(const Metric& m, const CMatrix& t, double tol = 1e-6);

struct VerifyOptions {
    int oracle_samples = 20000;   // 0 disables the oracle
    double oracle_agreement = 1e-4;
    ThetaSweepOptions theta;
    LambdaThetaOptions lambda_theta;
    LambdaComplexOptions lambda_complex;
};

struct VerificationReport {
    Eigen::Index dim = 0;
    Eigen::Index rank = 0;
    std::string metric_hash;
    std::string operator_hash;
    std::uint64_t seed = 0;
    double tol = 0.0;
    double dw = 0.0;               // reference value used for grading
    RadiusEstimate dw_multistart;
    bool oracle_used = false;
    double dw_oracle = 0.0;
    double oracle_rel_diff = 0.0;
    bool oracle_agrees = true;
    std::vector<BoundRecord> records;
    std::vector<Diagnostic> diagnostics;
    bool pass = true;   // every applicable record satisfied
};

/// Evaluates every single-operator bound on T, plus the pair bounds on the
/// Cartesian split T = Re_A(T) + i·Im_A(T), in a fixed catalog order.
/// Failures inside a record mark it not applicable.
VerificationReport verify_all(const Metric& m, const CMatrix& t, std::uint64_t seed, const VerifyOptions& opts = {});

/// Pair bounds for dw(X + Y): sum, Feki, product-sum at t = 1 and both
/// special t, and the off-diagonal block bound.
VerificationReport verify_pair(const Metric& m, const CMatrix& x, const CMatrix& y, std::uint64_t seed,
                               const VerifyOptions& opts = {});

/// 16 hex digits, FNV-1a over the entries.
std::string matrix_hash(const CMatrix& t);

} // namespace semihilbert
