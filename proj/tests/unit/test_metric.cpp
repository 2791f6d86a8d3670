#include "helpers.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/metric.hpp"
#include "semihilbert/rng.hpp"
#include "semihilbert/instances.hpp"

#include <cmath>

using namespace semihilbert;
using namespace testing;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::parse_error;
}

} // namespace

TEST_CASE("build_metric on the identity") {
    const Metric m = build_metric(eye(2), 1e-10);
    CHECK(m.rank() == 2);
    CHECK(close(m.sqrt_a(), eye(2)));
    CHECK(close(m.proj(), eye(2)));
    CHECK(close(m.pinv_a(), eye(2)));
}

TEST_CASE("build_metric on diag(1, 2)") {
    const Metric m = build_metric(kA12);
    CHECK(m.rank() == 2);
    CHECK(close(m.sqrt_a(), diag({1.0, std::sqrt(2.0)})));
    CHECK(close(m.pinv_a(), diag({1.0, 0.5})));
    CHECK(close(m.basis(), eye(2)));
}

TEST_CASE("build_metric on singular diag(1, 0)") {
    const Metric m = build_metric(diag({1.0, 0.0}));
    CHECK(m.rank() == 1);
    CHECK(close(m.proj(), diag({1.0, 0.0})));
    CHECK(close(m.pinv_sqrt_a(), diag({1.0, 0.0})));
    CHECK(close(m.a() * m.pinv_a() * m.a(), m.a()));
}

TEST_CASE("build_metric rejects invalid input") {
    CHECK(code_of([] { build_metric(CMatrix(0, 0)); }) == Errc::empty_matrix);
    CHECK(code_of([] { build_metric(CMatrix::Zero(2, 3)); }) == Errc::dimension_mismatch);
    CHECK(code_of([] { build_metric(mat({{1.0, 1.0}, {0.0, 1.0}})); }) == Errc::not_hermitian);
    CHECK(code_of([] { build_metric(diag({1.0, -1.0})); }) == Errc::not_positive_semidefinite);
}

TEST_CASE("zero metric has rank 0") {
    const Metric m = build_metric(CMatrix::Zero(2, 2));
    CHECK(m.rank() == 0);
}

TEST_CASE("random PSD metrics satisfy the pseudo-inverse identities") {
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index n = 2 + i % 3;
        const Metric m = build_metric(random_psd(rng, n, i % 2));
        const double scale = 1.0 + m.a().norm();
        CHECK((m.sqrt_a() * m.sqrt_a() - m.a()).norm() <= 1e-10 * scale);
        CHECK((m.a() * m.pinv_a() * m.a() - m.a()).norm() <= 1e-10 * scale);
        CHECK((m.proj() * m.proj() - m.proj()).norm() <= 1e-10);
        CHECK((m.basis().adjoint() * m.basis() - eye(m.rank())).norm() <= 1e-10);
    }
}

TEST_CASE("semi_inner") {
    CHECK(std::abs(semi_inner(build_metric(eye(2)), vec({1.0, 0.0}), vec({0.0, 1.0}))) == 0.0);
    CHECK(semi_inner(build_metric(kA12), vec({0.0, 1.0}), vec({0.0, 1.0})) == Complex(2.0, 0.0));
    CHECK(std::abs(semi_inner(build_metric(diag({1.0, 0.0})), vec({0.0, 1.0}), vec({0.0, 1.0}))) == 0.0);
}

TEST_CASE("semi_inner is linear in the first slot and conjugate-symmetric") {
    const Metric m = build_metric(kA12);
    const CVector x = vec({Complex(1, 2), Complex(-1, 0.5)});
    const CVector y = vec({Complex(0.3, -1), Complex(2, 1)});
    const Complex k(0.0, 2.0);
    CHECK(std::abs(semi_inner(m, k * x, y) - k * semi_inner(m, x, y)) <= 1e-12);
    CHECK(std::abs(semi_inner(m, x, y) - std::conj(semi_inner(m, y, x))) <= 1e-12);
}

TEST_CASE("semi_norm") {
    CHECK(semi_norm(build_metric(kA12), vec({1.0, 1.0})) == doctest::Approx(std::sqrt(3.0)));
    CHECK(semi_norm(build_metric(eye(2)), vec({3.0, 4.0})) == doctest::Approx(5.0));
    CHECK(semi_norm(build_metric(diag({1.0, 0.0})), vec({0.0, 5.0})) == 0.0);
}

TEST_CASE("compress") {
    SUBCASE("identity metric leaves T unchanged") {
        const CMatrix t = mat({{1.0, Complex(2, 1)}, {-3.0, Complex(0, 4)}});
        const Compressed c = compress(build_metric(eye(2)), t);
        CHECK(close(c.n, t));
        CHECK(close(c.w, t));
    }
    SUBCASE("diag(1, 2) with nilpotent X") {
        const Compressed c = compress(build_metric(kA12), kX);
        const CMatrix expected = mat({{0.0, 1.0 / std::sqrt(2.0)}, {0.0, 0.0}});
        CHECK(close(c.n, expected));
        CHECK(close(c.w, expected));
    }
    SUBCASE("T maps range(A) into N(A)") {
        const Compressed c = compress(build_metric(diag({1.0, 0.0})), diag({0.0, 1.0}));
        CHECK(c.n.rows() == 1);
        CHECK(c.n.cols() == 1);
        CHECK(std::abs(c.n(0, 0)) == 0.0);
    }
    SUBCASE("non A-bounded operator is rejected") {
        CHECK(code_of([] { compress(build_metric(diag({1.0, 0.0})), kX); }) == Errc::not_a_bounded);
    }
}

TEST_CASE("compression reproduces the A-quantities of the ambient witness") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index n = 2 + i % 3;
        const Metric m = build_metric(random_psd(rng, n, i % 2));
        const CMatrix t = random_a_bounded(rng, m);
        const Compressed c = compress(m, t);
        const CVector coords = rng.unit_vector(m.rank());
        const CVector x = m.ambient(coords);
        CHECK(semi_norm(m, x) == doctest::Approx(1.0).epsilon(1e-10));
        const Complex q = semi_inner(m, t * x, x);
        CHECK(std::abs(q - (coords.adjoint() * c.n * coords)(0, 0)) <= 1e-10 * (1 + c.n.norm()));
        CHECK(semi_norm(m, t * x) == doctest::Approx((c.w * coords).norm()).epsilon(1e-10));
        CHECK((m.coordinates(x) - coords).norm() <= 1e-10);
    }
}

TEST_CASE("doubled metric is diag(A, A)") {
    const Metric m2 = doubled(build_metric(kA12));
    CHECK(close(m2.a(), diag({1.0, 2.0, 1.0, 2.0})));
    CHECK(m2.rank() == 4);
}

TEST_CASE("compression fidelity over 1000 random unit coordinates") {
    Rng rng(13);
    const Metric m = build_metric(random_psd(rng, 4, 1));
    const CMatrix t = random_a_bounded(rng, m);
    const Compressed c = compress(m, t);
    double worst_q = 0.0, worst_n = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const CVector coords = rng.unit_vector(m.rank());
        const CVector x = m.pinv_sqrt_a() * m.basis() * coords;
        worst_q = std::max(worst_q, std::abs((coords.adjoint() * c.n * coords)(0, 0) - semi_inner(m, t * x, x)));
        worst_n = std::max(worst_n, std::abs((c.w * coords).norm() - semi_norm(m, t * x)));
    }
    CHECK(worst_q <= 1e-9);
    CHECK(worst_n <= 1e-9);
}

TEST_CASE("increasing rank_tol never increases the rank") {
    Rng rng(19);
    const CMatrix v = Eigen::HouseholderQR<CMatrix>(rng.gaussian(4, 4)).householderQ();
    const CMatrix a = v * diag({1.0, 1e-3, 1e-7, 1e-12}) * v.adjoint();
    Eigen::Index last = 5;
    for (double tol : {0.0, 1e-14, 1e-10, 1e-8, 1e-5, 1e-2, 0.5}) {
        const Eigen::Index r = build_metric(a, tol).rank();
        CHECK(r <= last);
        last = r;
    }
    CHECK(last == 1);
}
