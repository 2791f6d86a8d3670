#pragma once

#include "semihilbert/radii.hpp"

#include <vector>

namespace semihilbert {

/// Constants of the closed form for dw of [[I, X], [O, O]] with b = ‖X‖_A.
/// θ₀ = arctan(β + γ − p/3) is the root in [0, π/2] of the cubic
/// t³ + p t² + q t + r = 0 in t = tan θ.
struct CardanoData {
    double b = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    double s = 0.0;
    double alpha = 0.0;
    double beta = 0.0;    // NaN when the trigonometric solver was used with s < 0
    double gamma = 0.0;
    double theta0 = 0.0;
    bool used_trig_fallback = false;
};

/// Throws Errc::nonpositive_b unless b > 0. `force_trig` routes the root
/// selection through the three-real-root solver even when s ≥ 0.
CardanoData cardano_theta0(double b, bool force_trig = false);

/// φ(θ) = (cos θ + b sin θ)² (cos² θ + (cos θ + b sin θ)²)
double phi(double theta, double b);

/// Real roots of t³ + p t² + q t + r, ascending, by the trigonometric method
/// when all three are real and by Cardano otherwise.
std::vector<double> real_cubic_roots(double p, double q, double r);

struct PhiMax {
    double theta = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// max of φ on [0, π/2]: `grid` points then golden-section.
PhiMax maximize_phi(double b, int grid = 10000);

/// ψ(θ) = b² sin²θ cos²θ + b⁴ sin⁴θ, the squared DW objective of
/// [[O, X], [O, O]] along the extremal two-dimensional slice.
double psi(double theta, double b);
PhiMax maximize_psi(double b, int grid = 10000);

/// Closed forms as functions of b = ‖X‖_A.
double dw_ix_value(double b);
double dw_0x_value(double b);

inline constexpr double kExactAgreementTol = 1e-6;

/// dw under diag(A, A) of [[I, X], [O, O]] and [[O, X], [O, O]], with b from
/// op_seminorm. The witness is an explicit diag(A, A)-unit vector of length
/// 2n attaining the value; the maximizer holds its compressed coordinates.
/// If the closed form and the 1-D maximization disagree by more than
/// kExactAgreementTol·max(1, value), the grid value is reported with
/// `warning` set.
RadiusEstimate dw_exact_ix(const Metric& m, const CMatrix& x);
RadiusEstimate dw_exact_0x(const Metric& m, const CMatrix& x);

} // namespace semihilbert
