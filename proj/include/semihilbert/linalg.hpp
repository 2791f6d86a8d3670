#pragma once

#include <Eigen/Dense>

#include <complex>

namespace semihilbert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// (M + M*)/2
inline CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

/// Largest eigenvalue of a Hermitian matrix; only the lower triangle is read.
double lambda_max(const CMatrix& h);
double lambda_min(const CMatrix& h);

/// Top eigenvector of a Hermitian matrix.
CVector top_eigenvector(const CMatrix& h);
CVector bottom_eigenvector(const CMatrix& h);

/// λ_max(Re(e^{iθ} N)), the support function of the numerical range of N.
double rotated_lambda_max(const CMatrix& n, double theta);
double rotated_lambda_min(const CMatrix& n, double theta);

double spectral_norm(const CMatrix& m);
double min_singular_value(const CMatrix& m);

/// Multiply by a unit phase so the first entry with modulus above `eps`
/// becomes real and nonnegative.
void fix_phase(CVector& v, double eps = 1e-12);

bool all_finite(const CMatrix& m);

} // namespace semihilbert
