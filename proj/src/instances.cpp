#include "semihilbert/instances.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/radii.hpp"

#include <numbers>

namespace semihilbert {

namespace {

CMatrix random_unitary(Rng& rng, Eigen::Index n) {
    Eigen::HouseholderQR<CMatrix> qr(rng.gaussian(n, n));
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    // Fix the phases of R's diagonal so the distribution does not depend on
    // the QR sign convention.
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0.0) q.col(k) *= r(k, k) / a;
    }
    return q;
}

CMatrix complement(const Metric& m) { return CMatrix::Identity(m.dim(), m.dim()) - m.proj(); }

} // namespace

CMatrix random_psd(Rng& rng, Eigen::Index n, Eigen::Index zeros) {
    const CMatrix v = random_unitary(rng, n);
    RVector lambda(n);
    for (Eigen::Index k = 0; k < n; ++k) lambda(k) = k < zeros ? 0.0 : rng.uniform(0.2, 2.0);
    CMatrix a = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
    return hermitian_part(a);
}

CMatrix random_a_bounded(Rng& rng, const Metric& m) {
    const CMatrix g = rng.gaussian(m.dim(), m.dim());
    return g - m.proj() * g * complement(m);
}

CMatrix random_a_selfadjoint(Rng& rng, const Metric& m) {
    const Eigen::Index n = m.dim();
    const CMatrix k = hermitian_part(rng.gaussian(n, n));
    return m.pinv_sqrt_a() * k * m.sqrt_a() + complement(m) * rng.gaussian(n, n);
}

CMatrix random_a_null(Rng& rng, const Metric& m) { return complement(m) * rng.gaussian(m.dim(), m.dim()); }

CMatrix random_a_unitary(Rng& rng, const Metric& m) {
    const Eigen::Index n = m.dim();
    CVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    return m.eigvecs() * phases.asDiagonal() * m.eigvecs().adjoint();
}

CMatrix lift_compressed(const Metric& m, const CMatrix& n) {
    return m.pinv_sqrt_a() * m.basis() * n * m.basis().adjoint() * m.sqrt_a();
}

CMatrix random_nilpotent_type(Rng& rng, const Metric& m, double beta) {
    const Eigen::Index r = m.rank();
    if (r < 2) throw Error(Errc::dimension_mismatch, "nilpotent-type instances need rank(A) >= 2");
    const CMatrix q = random_unitary(rng, r);
    const CMatrix n = beta * q.col(0) * q.col(1).adjoint();
    return lift_compressed(m, n);
}

CMatrix random_with_seminorm(Rng& rng, const Metric& m, double b) {
    if (b <= 0.0 || m.rank() == 0) return random_a_null(rng, m);
    CMatrix x = random_a_bounded(rng, m);
    double nrm = op_seminorm(m, x).value;
    while (nrm <= 1e-8) {
        x = random_a_bounded(rng, m);
        nrm = op_seminorm(m, x).value;
    }
    // Rescale only the part seen by A so N(A)-directed noise stays generic.
    const CMatrix seen = m.proj() * x;
    return seen * (b / nrm) + (x - seen);
}

} // namespace semihilbert
