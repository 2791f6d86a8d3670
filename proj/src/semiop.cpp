#include "semihilbert/semiop.hpp"

#include "semihilbert/error.hpp"

#include <algorithm>
#include <sstream>

namespace semihilbert {

namespace {

CMatrix complement(const Metric& m) {
    return CMatrix::Identity(m.dim(), m.dim()) - m.proj();
}

void require_in_ba(const Metric& m, const CMatrix& t, const char* what) {
    require_operator(m, t, what);
    const double residual = in_ba_residual(m, t);
    if (residual > kMembershipTol) {
        std::ostringstream os;
        os << what << " has no A-adjoint: R(T*A) not in R(A) (relative residual " << residual << ")";
        throw Error(Errc::not_in_ba, os.str());
    }
}

} // namespace

double in_ba_residual(const Metric& m, const CMatrix& t) {
    require_operator(m, t);
    const CMatrix tsa = t.adjoint() * m.a();
    return (complement(m) * tsa).norm() / (1.0 + tsa.norm());
}

double a_bounded_residual(const Metric& m, const CMatrix& t) {
    require_operator(m, t);
    const CMatrix rt = m.sqrt_a() * t;
    return (rt * complement(m)).norm() / (1.0 + rt.norm());
}

bool in_ba(const Metric& m, const CMatrix& t, double tol) { return in_ba_residual(m, t) <= tol; }

bool is_a_bounded(const Metric& m, const CMatrix& t, double tol) { return a_bounded_residual(m, t) <= tol; }

CMatrix sharp(const Metric& m, const CMatrix& t) {
    require_in_ba(m, t, "operator");
    return m.pinv_a() * t.adjoint() * m.a();
}

CMatrix re_a(const Metric& m, const CMatrix& t) { return (t + sharp(m, t)) * 0.5; }

CMatrix im_a(const Metric& m, const CMatrix& t) { return (t - sharp(m, t)) / Complex(0.0, 2.0); }

CMatrix abs_sq(const Metric& m, const CMatrix& t) { return sharp(m, t) * t; }

double selfadjoint_residual(const Metric& m, const CMatrix& t) {
    require_operator(m, t);
    return (m.a() * t - t.adjoint() * m.a()).norm();
}

double normal_residual(const Metric& m, const CMatrix& t) {
    const CMatrix s = sharp(m, t);
    return (t * s - s * t).norm();
}

double unitary_residual(const Metric& m, const CMatrix& t) {
    const CMatrix s = sharp(m, t);
    const CMatrix ss = sharp(m, s);
    return std::max((s * t - m.proj()).norm(), (ss * s - m.proj()).norm());
}

bool is_a_selfadjoint(const Metric& m, const CMatrix& t, double tol) { return selfadjoint_residual(m, t) <= tol; }

bool is_a_normal(const Metric& m, const CMatrix& t, double tol) { return normal_residual(m, t) <= tol; }

bool is_a_unitary(const Metric& m, const CMatrix& t, double tol) { return unitary_residual(m, t) <= tol; }

CMatrix assemble(const CMatrix& t11, const CMatrix& t12, const CMatrix& t21, const CMatrix& t22) {
    const Eigen::Index n = t11.rows();
    for (const CMatrix* b : {&t11, &t12, &t21, &t22}) {
        if (b->rows() != n || b->cols() != n) throw Error(Errc::dimension_mismatch, "blocks must share one square dimension");
    }
    CMatrix out(2 * n, 2 * n);
    out << t11, t12, t21, t22;
    return out;
}

BlockOperator block2(const Metric& m, const CMatrix& t11, const CMatrix& t12, const CMatrix& t21,
                     const CMatrix& t22) {
    require_in_ba(m, t11, "block t11");
    require_in_ba(m, t12, "block t12");
    require_in_ba(m, t21, "block t21");
    require_in_ba(m, t22, "block t22");
    return BlockOperator{{t11, t12, t21, t22}, assemble(t11, t12, t21, t22), m, doubled(m)};
}

BlockOperator block_sharp(const BlockOperator& b) {
    const Metric& m = b.metric;
    CMatrix s11 = sharp(m, b.block(0, 0));
    CMatrix s12 = sharp(m, b.block(1, 0));
    CMatrix s21 = sharp(m, b.block(0, 1));
    CMatrix s22 = sharp(m, b.block(1, 1));
    CMatrix assembled = assemble(s11, s12, s21, s22);
    return BlockOperator{{std::move(s11), std::move(s12), std::move(s21), std::move(s22)}, std::move(assembled), b.metric,
                         b.metric2};
}

} // namespace semihilbert
