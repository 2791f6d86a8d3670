#include "helpers.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/instances.hpp"
#include "semihilbert/rng.hpp"
#include "semihilbert/semiop.hpp"

#include <cmath>

using namespace semihilbert;
using namespace testing;

TEST_CASE("sharp") {
    SUBCASE("identity metric gives the conjugate transpose") {
        const CMatrix t = mat({{1.0, Complex(2, 1)}, {Complex(0, -3), 4.0}});
        CHECK(close(sharp(build_metric(eye(2)), t), t.adjoint()));
    }
    SUBCASE("diag(1, 2)") {
        const Metric m = build_metric(kA12);
        CHECK(close(sharp(m, kX), mat({{0.0, 0.0}, {0.5, 0.0}})));
        CHECK(close(sharp(m, kY), kY));
    }
}

TEST_CASE("sharp is an A-adjoint on the standard basis") {
    const Metric m = build_metric(kA12);
    const CMatrix s = sharp(m, kX);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const CVector x = eye(2).col(i);
            const CVector y = eye(2).col(j);
            CHECK(std::abs(semi_inner(m, kX * x, y) - semi_inner(m, x, s * y)) <= 1e-12);
        }
}

TEST_CASE("sharp identity A T^# = T* A on random instances") {
    Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        const Eigen::Index n = 2 + i % 3;
        const Metric m = build_metric(random_psd(rng, n, i % 3 == 0 ? 1 : 0));
        const CMatrix t = random_a_bounded(rng, m);
        const double scale = 1.0 + m.a().norm() * t.norm();
        CHECK((m.a() * sharp(m, t) - t.adjoint() * m.a()).norm() <= 1e-10 * scale);
        // (T^#)^# = P_A T P_A
        CHECK((sharp(m, sharp(m, t)) - m.proj() * t * m.proj()).norm() <= 1e-9 * scale);
    }
}

TEST_CASE("in_ba") {
    CHECK(in_ba(build_metric(kA12), mat({{1.0, 2.0}, {3.0, 4.0}})));
    // T*A = 0 here, so S = 0 is an A-adjoint and T belongs to B_A.
    CHECK(in_ba(build_metric(diag({1.0, 0.0})), mat({{0.0, 0.0}, {1.0, 0.0}})));
    CHECK_FALSE(in_ba(build_metric(diag({1.0, 0.0})), kX));
    CHECK(in_ba(build_metric(diag({1.0, 0.0})), eye(2)));
    CHECK(in_ba_residual(build_metric(diag({1.0, 0.0})), eye(2)) == 0.0);
}

TEST_CASE("is_a_bounded") {
    CHECK(is_a_bounded(build_metric(kA12), mat({{1.0, 2.0}, {3.0, 4.0}})));
    CHECK_FALSE(is_a_bounded(build_metric(diag({1.0, 0.0})), kX));
    CHECK(is_a_bounded(build_metric(diag({1.0, 0.0})), diag({1.0, 7.0})));
    CHECK(a_bounded_residual(build_metric(diag({1.0, 0.0})), kX) > 0.1);
}

TEST_CASE("sharp of a non-B_A operator is rejected") {
    CHECK_THROWS_AS(sharp(build_metric(diag({1.0, 0.0})), kX), Error);
}

TEST_CASE("Cartesian parts") {
    SUBCASE("identity metric") {
        const Metric m = build_metric(eye(2));
        CHECK(close(re_a(m, kX), mat({{0.0, 0.5}, {0.5, 0.0}})));
        CHECK(close(im_a(m, kX), mat({{0.0, Complex(0, -0.5)}, {Complex(0, 0.5), 0.0}})));
    }
    SUBCASE("diag(1, 2)") {
        const Metric m = build_metric(kA12);
        const CMatrix re = re_a(m, kX);
        CHECK(close(re, mat({{0.0, 0.5}, {0.25, 0.0}})));
        CHECK(close(m.a() * re, (m.a() * re).adjoint()));
        CHECK(close(re + kI * im_a(m, kX), kX));
    }
    SUBCASE("A-selfadjoint operator has zero imaginary part") {
        Rng rng(5);
        const Metric m = build_metric(random_psd(rng, 3, 1));
        const CMatrix t = m.proj() * random_a_selfadjoint(rng, m);
        CHECK(im_a(m, t).norm() <= 1e-10);
    }
}

TEST_CASE("abs_sq") {
    CHECK(close(abs_sq(build_metric(eye(2)), kX), diag({0.0, 1.0})));
    CHECK(close(abs_sq(build_metric(kA12), kX), diag({0.0, 0.5})));
    CHECK(abs_sq(build_metric(kA12), CMatrix::Zero(2, 2)).norm() == 0.0);
}

TEST_CASE("selfadjoint, normal and unitary predicates") {
    const Metric id = build_metric(eye(2));
    const CMatrix d = diag({1.0, -1.0});
    CHECK(is_a_selfadjoint(id, d));
    CHECK(is_a_normal(id, d));
    CHECK(is_a_unitary(id, d));

    const Metric m = build_metric(kA12);
    CHECK_FALSE(is_a_selfadjoint(m, kX));
    CHECK(selfadjoint_residual(m, kX) == doctest::Approx(std::sqrt(2.0)));

    for (double phi : {0.0, 0.3, 1.7, 3.0})
        CHECK(is_a_unitary(m, diag({std::polar(1.0, phi), std::polar(1.0, -2 * phi + 0.4)})));
    CHECK_FALSE(is_a_unitary(m, 2.0 * eye(2)));
}

TEST_CASE("random A-unitaries and A-selfadjoint operators have the claimed structure") {
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        const Metric m = build_metric(random_psd(rng, 2 + i % 3, i % 2));
        CHECK(is_a_unitary(m, random_a_unitary(rng, m)));
        CHECK(is_a_selfadjoint(m, random_a_selfadjoint(rng, m)));
        const CMatrix z = random_a_null(rng, m);
        CHECK((m.a() * z).norm() <= 1e-12 * (1 + z.norm()));
    }
}

TEST_CASE("block2 and block_sharp") {
    const Metric m = build_metric(kA12);
    const CMatrix o = CMatrix::Zero(2, 2);
    SUBCASE("assembled blocks") {
        const BlockOperator t = block2(m, eye(2), kX, o, o);
        CHECK(t.assembled.rows() == 4);
        CHECK(close(t.assembled.topLeftCorner(2, 2), eye(2)));
        CHECK(close(t.assembled.topRightCorner(2, 2), kX));
        CHECK(close(t.metric2.a(), diag({1.0, 2.0, 1.0, 2.0})));
        CHECK(block2(m, o, o, o, o).assembled.norm() == 0.0);
    }
    SUBCASE("identity metric gives the block conjugate transpose") {
        const Metric id = build_metric(eye(2));
        const BlockOperator t = block2(id, eye(2), kX, kY, 2.0 * kX);
        CHECK(close(block_sharp(t).assembled, t.assembled.adjoint()));
    }
    SUBCASE("nilpotent block under diag(1, 2)") {
        const BlockOperator s = block_sharp(block2(m, o, kX, o, o));
        CHECK(close(s.block(0, 0), o));
        CHECK(close(s.block(0, 1), o));
        CHECK(close(s.block(1, 0), mat({{0.0, 0.0}, {0.5, 0.0}})));
        CHECK(close(s.block(1, 1), o));
    }
    SUBCASE("block sharp agrees with the sharp of the assembled operator") {
        const CMatrix p = mat({{1.0, 2.0}, {0.0, Complex(0, 1)}});
        const CMatrix q = mat({{0.5, 0.0}, {-1.0, 3.0}});
        const BlockOperator c = block2(m, p, q, o, o);
        const BlockOperator s = block_sharp(c);
        CHECK(close(s.assembled, sharp(c.metric2, c.assembled), 1e-12));
        CHECK(close(s.block(0, 0), sharp(m, p)));
        CHECK(close(s.block(1, 0), sharp(m, q)));
    }
}
