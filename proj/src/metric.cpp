#include "semihilbert/metric.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/semiop.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace semihilbert {

Metric Metric::build(const CMatrix& a, double rank_tol) {
    if (a.size() == 0) throw Error(Errc::empty_matrix, "metric matrix is empty");
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << "metric must be square, got " << a.rows() << "x" << a.cols();
        throw Error(Errc::dimension_mismatch, os.str());
    }
    if (!all_finite(a)) throw Error(Errc::not_hermitian, "metric has non-finite entries");
    if (!(rank_tol >= 0.0)) throw Error(Errc::not_positive_semidefinite, "rank_tol must be nonnegative");

    const double scale = std::max(1.0, a.norm());
    const double asym = (a - a.adjoint()).norm();
    if (asym > kHermitianTol * scale) {
        std::ostringstream os;
        os << "metric is not Hermitian: ||A - A*||_F = " << asym;
        throw Error(Errc::not_hermitian, os.str());
    }

    Metric m;
    m.rank_tol_ = rank_tol;
    m.a_ = hermitian_part(a);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(m.a_);
    const Eigen::Index n = a.rows();
    // Eigen returns ascending order; store descending.
    m.eigvals_ = es.eigenvalues().reverse();
    m.eigvecs_ = es.eigenvectors().rowwise().reverse();

    const double top = std::max(0.0, m.eigvals_(0));
    const double cutoff = rank_tol * top;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double& lam = m.eigvals_(k);
        if (lam < -cutoff || (top == 0.0 && lam < 0.0)) {
            std::ostringstream os;
            os << "metric has negative eigenvalue " << lam << " (cutoff " << -cutoff << ")";
            throw Error(Errc::not_positive_semidefinite, os.str());
        }
        if (lam <= cutoff) {
            lam = 0.0;
        } else {
            ++rank;
        }
    }

    RVector root(n), inv_root(n), inv(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = m.eigvals_(k);
        root(k) = std::sqrt(lam);
        inv_root(k) = lam > 0.0 ? 1.0 / std::sqrt(lam) : 0.0;
        inv(k) = lam > 0.0 ? 1.0 / lam : 0.0;
    }
    const CMatrix& v = m.eigvecs_;
    m.sqrt_a_ = v * root.cast<Complex>().asDiagonal() * v.adjoint();
    m.pinv_sqrt_a_ = v * inv_root.cast<Complex>().asDiagonal() * v.adjoint();
    m.pinv_a_ = v * inv.cast<Complex>().asDiagonal() * v.adjoint();

    if (rank == n) {
        m.proj_ = CMatrix::Identity(n, n);
        m.basis_ = CMatrix::Identity(n, n);
    } else {
        m.basis_ = v.leftCols(rank);
        for (Eigen::Index k = 0; k < rank; ++k) {
            Eigen::Index arg = 0;
            m.basis_.col(k).cwiseAbs().maxCoeff(&arg);
            const Complex pivot = m.basis_(arg, k);
            m.basis_.col(k) *= std::conj(pivot) / std::abs(pivot);
        }
        m.proj_ = m.basis_ * m.basis_.adjoint();
    }
    return m;
}

CVector Metric::ambient(const CVector& coords) const {
    if (coords.size() != rank()) throw Error(Errc::dimension_mismatch, "coordinate vector length must equal rank(A)");
    return pinv_sqrt_a_ * (basis_ * coords);
}

CVector Metric::coordinates(const CVector& x) const {
    if (x.size() != dim()) throw Error(Errc::dimension_mismatch, "vector length must equal dim(A)");
    return basis_.adjoint() * (sqrt_a_ * x);
}

Complex semi_inner(const Metric& m, const CVector& x, const CVector& y) {
    if (x.size() != m.dim() || y.size() != m.dim()) {
        throw Error(Errc::dimension_mismatch, "semi_inner: vector length must equal dim(A)");
    }
    return y.dot(m.a() * x);
}

double semi_norm(const Metric& m, const CVector& x) {
    return std::sqrt(std::max(0.0, semi_inner(m, x, x).real()));
}

void require_operator(const Metric& m, const CMatrix& t, const char* what) {
    if (t.rows() != t.cols() || t.rows() != m.dim()) {
        std::ostringstream os;
        os << what << " must be " << m.dim() << "x" << m.dim() << ", got " << t.rows() << "x" << t.cols();
        throw Error(Errc::dimension_mismatch, os.str());
    }
    if (!all_finite(t)) throw Error(Errc::dimension_mismatch, std::string(what) + " has non-finite entries");
}

Compressed compress(const Metric& m, const CMatrix& t) {
    require_operator(m, t);
    const double residual = a_bounded_residual(m, t);
    if (residual > kMembershipTol) {
        std::ostringstream os;
        os << "operator is not A-bounded (relative residual " << residual << ")";
        throw Error(Errc::not_a_bounded, os.str());
    }
    Compressed c;
    c.w = m.sqrt_a() * t * m.pinv_sqrt_a() * m.basis();
    c.n = m.basis().adjoint() * c.w;
    return c;
}

Metric doubled(const Metric& m) {
    const Eigen::Index n = m.dim();
    CMatrix big = CMatrix::Zero(2 * n, 2 * n);
    big.topLeftCorner(n, n) = m.a();
    big.bottomRightCorner(n, n) = m.a();
    return Metric::build(big, m.rank_tol());
}

} // namespace semihilbert
