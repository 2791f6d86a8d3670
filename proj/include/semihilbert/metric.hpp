#pragma once

#include "semihilbert/linalg.hpp"

namespace semihilbert {

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

/// Positive-semidefinite metric A together with the spectral data every
/// semi-Hilbertian computation needs. Immutable once built.
class Metric {
public:
    /// Validates and factors `a`. Eigenvalues with |λ| < rank_tol·λ_max are
    /// clamped to zero; anything more negative is rejected.
    static Metric build(const CMatrix& a, double rank_tol = kDefaultRankTol);

    Eigen::Index dim() const noexcept { return a_.rows(); }
    Eigen::Index rank() const noexcept { return basis_.cols(); }
    double rank_tol() const noexcept { return rank_tol_; }

    const CMatrix& a() const noexcept { return a_; }
    const RVector& eigvals() const noexcept { return eigvals_; }   // descending
    const CMatrix& eigvecs() const noexcept { return eigvecs_; }
    const CMatrix& sqrt_a() const noexcept { return sqrt_a_; }
    const CMatrix& pinv_sqrt_a() const noexcept { return pinv_sqrt_a_; }
    const CMatrix& pinv_a() const noexcept { return pinv_a_; }
    const CMatrix& proj() const noexcept { return proj_; }
    /// n×r, orthonormal columns spanning range(A). The identity when A is
    /// invertible.
    const CMatrix& basis() const noexcept { return basis_; }

    /// x = (A^{1/2})†·basis·c, the A-unit vector represented by the unit
    /// coordinate vector c (its N(A) component is zero).
    CVector ambient(const CVector& coords) const;
    /// c = basis*·A^{1/2}·x, so that ‖c‖ = ‖x‖_A.
    CVector coordinates(const CVector& x) const;

private:
    Metric() = default;

    CMatrix a_;
    RVector eigvals_;
    CMatrix eigvecs_;
    CMatrix sqrt_a_;
    CMatrix pinv_sqrt_a_;
    CMatrix pinv_a_;
    CMatrix proj_;
    CMatrix basis_;
    double rank_tol_ = kDefaultRankTol;
};

inline Metric build_metric(const CMatrix& a, double rank_tol = kDefaultRankTol) {
    return Metric::build(a, rank_tol);
}

/// ⟨x, y⟩_A = ⟨Ax, y⟩ = y*Ax, linear in x.
Complex semi_inner(const Metric& m, const CVector& x, const CVector& y);

/// ‖x‖_A = √⟨x, x⟩_A
double semi_norm(const Metric& m, const CVector& x);

/// Compressed pair for an A-bounded operator T:
///   W = A^{1/2}·T·(A^{1/2})†·basis   (n×r), ‖Wc‖ = ‖T x_c‖_A
///   N = basis*·W                     (r×r), c*Nc = ⟨T x_c, x_c⟩_A
/// where x_c = metric.ambient(c).
struct Compressed {
    CMatrix n;
    CMatrix w;
};

/// Throws Errc::not_a_bounded when T does not annihilate N(A) under A^{1/2}.
Compressed compress(const Metric& m, const CMatrix& t);

/// Block-diagonal diag(A, A) metric for operator matrices on H ⊕ H.
Metric doubled(const Metric& m);

void require_operator(const Metric& m, const CMatrix& t, const char* what = "operator");

} // namespace semihilbert
