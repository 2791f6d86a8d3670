#include "semihilbert/linalg.hpp"
#include "semihilbert/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace semihilbert {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::empty_matrix: return "EmptyMatrix";
        case Errc::not_hermitian: return "NotHermitian";
        case Errc::not_positive_semidefinite: return "NotPositiveSemidefinite";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::not_a_bounded: return "NotABounded";
        case Errc::not_in_ba: return "NotInBA";
        case Errc::rank_too_large: return "RankTooLarge";
        case Errc::zero_t: return "ZeroT";
        case Errc::degenerate_norm: return "DegenerateNorm";
        case Errc::nonpositive_b: return "NonpositiveB";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

namespace {

RVector eigenvalues_of(const CMatrix& h) {
    if (h.rows() == 1) {
        return RVector::Constant(1, h(0, 0).real());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

} // namespace

double lambda_max(const CMatrix& h) { return eigenvalues_of(h).maxCoeff(); }

double lambda_min(const CMatrix& h) { return eigenvalues_of(h).minCoeff(); }

CVector top_eigenvector(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return es.eigenvectors().col(h.rows() - 1);
}

CVector bottom_eigenvector(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return es.eigenvectors().col(0);
}

double rotated_lambda_max(const CMatrix& n, double theta) {
    const Complex phase = std::polar(1.0, theta);
    return lambda_max(hermitian_part(phase * n));
}

double rotated_lambda_min(const CMatrix& n, double theta) {
    const Complex phase = std::polar(1.0, theta);
    return lambda_min(hermitian_part(phase * n));
}

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double min_singular_value(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    return s(s.size() - 1);
}

void fix_phase(CVector& v, double eps) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > eps) {
            v *= std::conj(v(i)) / mag;
            v(i) = Complex(mag, 0.0);
            return;
        }
    }
}

bool all_finite(const CMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

} // namespace semihilbert
