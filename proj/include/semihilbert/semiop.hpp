#pragma once

#include "semihilbert/metric.hpp"

#include <array>

namespace semihilbert {

inline constexpr double kMembershipTol = 1e-9;

// Relative residuals behind the membership predicates. Both are scaled by
// (1 + norm) so the predicates are invariant under rescaling T.

/// ‖(I − P_A)·T*·A‖_F / (1 + ‖T*A‖_F); zero iff R(T*A) ⊆ R(A).
double in_ba_residual(const Metric& m, const CMatrix& t);
/// ‖A^{1/2}·T·(I − P_A)‖_F / (1 + ‖A^{1/2}T‖_F); zero iff T is A-bounded.
double a_bounded_residual(const Metric& m, const CMatrix& t);

bool in_ba(const Metric& m, const CMatrix& t, double tol = kMembershipTol);
bool is_a_bounded(const Metric& m, const CMatrix& t, double tol = kMembershipTol);

/// T^{♯_A} = A†·T*·A. Throws Errc::not_in_ba when T has no A-adjoint.
CMatrix sharp(const Metric& m, const CMatrix& t);

/// (T + T^♯)/2 and (T − T^♯)/(2i).
CMatrix re_a(const Metric& m, const CMatrix& t);
CMatrix im_a(const Metric& m, const CMatrix& t);

/// |T|²_A = T^♯·T
CMatrix abs_sq(const Metric& m, const CMatrix& t);

// Absolute Frobenius residuals reported alongside the predicates.
double selfadjoint_residual(const Metric& m, const CMatrix& t);   // ‖AT − T*A‖_F
double normal_residual(const Metric& m, const CMatrix& t);        // ‖TT^♯ − T^♯T‖_F
double unitary_residual(const Metric& m, const CMatrix& t);       // max of the two P_A residuals

bool is_a_selfadjoint(const Metric& m, const CMatrix& t, double tol = kMembershipTol);
bool is_a_normal(const Metric& m, const CMatrix& t, double tol = kMembershipTol);
/// U^♯U = (U^♯)^♯U^♯ = P_A
bool is_a_unitary(const Metric& m, const CMatrix& t, double tol = kMembershipTol);

/// 2×2 operator matrix on H ⊕ H under the metric diag(A, A).
struct BlockOperator {
    std::array<CMatrix, 4> blocks;   // row-major: t11, t12, t21, t22
    CMatrix assembled;
    Metric metric;                   // A
    Metric metric2;                  // diag(A, A)

    const CMatrix& block(int row, int col) const { return blocks[static_cast<std::size_t>(2 * row + col)]; }
};

CMatrix assemble(const CMatrix& t11, const CMatrix& t12, const CMatrix& t21, const CMatrix& t22);

/// Requires every block in B_A(H).
BlockOperator block2(const Metric& m, const CMatrix& t11, const CMatrix& t12, const CMatrix& t21,
                     const CMatrix& t22);

/// Block A-adjoint: (T11^♯, T21^♯; T12^♯, T22^♯).
BlockOperator block_sharp(const BlockOperator& b);

} // namespace semihilbert
