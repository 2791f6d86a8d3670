#include "helpers.hpp"

#include "semihilbert/bounds.hpp"
#include "semihilbert/error.hpp"
#include "semihilbert/instances.hpp"
#include "semihilbert/rng.hpp"
#include "semihilbert/semiop.hpp"

#include <cmath>

using namespace semihilbert;
using namespace testing;

namespace {

const double kSqrt2 = std::sqrt(2.0);

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

TEST_CASE("sandwich") {
    auto [lo, hi] = sandwich(build_metric(eye(2)), eye(2));
    CHECK(lo.value == doctest::Approx(1.0));
    CHECK(hi.value == doctest::Approx(kSqrt2));
    CHECK(lo.kind == BoundKind::lower);
    CHECK(hi.kind == BoundKind::upper);

    auto [lx, hx] = sandwich(build_metric(kA12), kX);
    CHECK(lx.value == doctest::Approx(0.5));
    CHECK(hx.value == doctest::Approx(0.612372).epsilon(1e-6));

    auto [ly, hy] = sandwich(build_metric(kA12), kY);
    CHECK(ly.value == doctest::Approx(1.0));
    CHECK(hy.value == doctest::Approx(kSqrt2));
}

TEST_CASE("lower_crawford") {
    for (const auto& r : lower_crawford(build_metric(eye(2)), eye(2))) CHECK(r.value == doctest::Approx(kSqrt2));
    const auto x = lower_crawford(build_metric(kA12), kX);
    CHECK(x[0].value == doctest::Approx(0.353553).epsilon(1e-6));
    CHECK(x[1].value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(x[2].value == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(x[3].value == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("lower_crawford refines w and the squared seminorm") {
    Rng rng(21);
    for (int i = 0; i < 15; ++i) {
        const Metric m = build_metric(random_psd(rng, 2 + i % 3, i % 2));
        const CMatrix t = random_a_bounded(rng, m);
        const auto r = lower_crawford(m, t);
        const double w = numerical_radius(m, t).value;
        const double n = op_seminorm(m, t).value;
        CHECK(r[0].value >= w - 1e-12);
        CHECK(r[1].value >= n * n - 1e-12);
    }
}

TEST_CASE("upper_theta_sweep") {
    CHECK(upper_theta_sweep(build_metric(eye(2)), eye(2)).value == doctest::Approx(kSqrt2).epsilon(1e-9));
    const BoundRecord x = upper_theta_sweep(build_metric(kA12), kX);
    CHECK(x.value >= 0.5);
    Rng rng(2);
    const Metric m = build_metric(random_psd(rng, 3, 1));
    CHECK(upper_theta_sweep(m, random_a_null(rng, m)).value <= 1e-12);
}

TEST_CASE("single-sweep reduction equals the nested theta sweep") {
    Rng rng(40);
    ThetaSweepOptions nested;
    nested.nested = true;
    nested.grid = 180;
    nested.inner_grid = 360;
    for (int i = 0; i < 6; ++i) {
        const Metric m = build_metric(random_psd(rng, 2 + i % 2, i % 2));
        const CMatrix t = random_a_bounded(rng, m);
        const double reduced = upper_theta_sweep(m, t).value;
        const double full = upper_theta_sweep(m, t, nested).value;
        CAPTURE(i);
        CHECK(reduced == doctest::Approx(full).epsilon(1e-7));
    }
}

TEST_CASE("cartesian_half") {
    auto [lo, hi] = cartesian_half(build_metric(eye(2)), eye(2));
    CHECK(lo.value == doctest::Approx(kSqrt2).epsilon(1e-9));
    CHECK(hi.value == doctest::Approx(kSqrt2).epsilon(1e-9));
    auto [lx, hx] = cartesian_half(build_metric(kA12), kX);
    CHECK(lx.value <= 0.5 + 1e-9);
    CHECK(hx.value >= 0.5 - 1e-9);
    auto [lz, hz] = cartesian_half(build_metric(kA12), CMatrix::Zero(2, 2));
    CHECK(lz.value == 0.0);
    CHECK(hz.value == 0.0);
}

TEST_CASE("upper_buzano") {
    auto [i, ii] = upper_buzano(build_metric(eye(2)), eye(2));
    CHECK(i.value == doctest::Approx(kSqrt2));
    CHECK(ii.value == doctest::Approx(kSqrt2));
    auto [xi, xii] = upper_buzano(build_metric(kA12), kX);
    CHECK(xii.value == doctest::Approx(1.0 / kSqrt2).epsilon(1e-9));
    CHECK(xi.value >= 0.5);
}

TEST_CASE("upper_triple") {
    CHECK(upper_triple(build_metric(kA12), CMatrix::Zero(2, 2)).value == 0.0);
    CHECK(upper_triple(build_metric(eye(2)), eye(2)).value == doctest::Approx(kSqrt2).epsilon(1e-9));
    CHECK(upper_triple(build_metric(kA12), kX).value >= 0.5);
}

TEST_CASE("upper_lambda_theta") {
    auto [g, z] = upper_lambda_theta(build_metric(kA12), CMatrix::Zero(2, 2));
    CHECK(g.value == 0.0);
    auto [gi, zi] = upper_lambda_theta(build_metric(eye(2)), eye(2));
    CHECK(zi.value == doctest::Approx(kSqrt2).epsilon(1e-9));
    CHECK(gi.value <= zi.value + 1e-12);
    auto [gx, zx] = upper_lambda_theta(build_metric(kA12), kX);
    CHECK(gx.value >= 0.5 - 1e-9);
}

TEST_CASE("upper_lambda_complex") {
    const Metric m = build_metric(kA12);
    auto [g, z] = upper_lambda_complex(m, kX);
    // the lambda = 0 member is the sandwich upper bound
    CHECK(z.value == doctest::Approx(sandwich(m, kX).second.value).epsilon(1e-12));
    CHECK(g.value >= 0.5 - 1e-9);
    CHECK(g.value <= 0.612372 + 1e-6);
    auto [gi, zi] = upper_lambda_complex(build_metric(eye(2)), eye(2));
    CHECK(gi.value == doctest::Approx(kSqrt2).epsilon(1e-9));
}

TEST_CASE("sum_upper") {
    const Metric m = build_metric(kA12);
    auto [r0, s0] = sum_upper(m, kX, CMatrix::Zero(2, 2));
    CHECK(r0.value == doctest::Approx(0.5).epsilon(1e-9));
    auto [r, s] = sum_upper(m, kX, kY);
    CHECK(r.value == doctest::Approx(2.621320).epsilon(5e-4));
    CHECK_FALSE(s.has_value());

    const Metric m2 = doubled(m);
    const CMatrix o = CMatrix::Zero(2, 2);
    auto [rb, sb] = sum_upper(m2, assemble(o, kX, o, o), assemble(o, o, kY, o));
    REQUIRE(sb.has_value());
    CHECK(sb->value <= rb.value);
}

TEST_CASE("feki_sum_upper") {
    const Metric m = build_metric(kA12);
    CHECK(feki_sum_upper(m, CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)).value == 0.0);
    const double sum = 0.5 + std::sqrt(2.0);
    CHECK(feki_sum_upper(m, kX, kY).value == doctest::Approx(std::sqrt(2 * sum + 4 * sum * sum)).epsilon(1e-9));
    CHECK(feki_sum_upper(m, kX, kY).value == doctest::Approx(4.299451).epsilon(1e-6));
    CHECK(feki_sum_upper(m, kX, 2.0 * kY).value > feki_sum_upper(m, kX, kY).value);
}

TEST_CASE("offdiag_upper") {
    const Metric m = build_metric(kA12);
    const CMatrix o = CMatrix::Zero(2, 2);
    CHECK(offdiag_upper(m, o, o).value == 0.0);
    const BoundRecord r = offdiag_upper(m, kX, kY);
    CHECK(r.value == doctest::Approx(1.730406).epsilon(1e-6));
    CHECK(r.value >= dw_radius(doubled(m), assemble(o, kX, kY, o)).value);
    CHECK(offdiag_upper(build_metric(eye(2)), kY, kY).value == doctest::Approx(2.0 * std::sqrt(1.25)));
    CHECK(code_of([] { offdiag_upper(build_metric(diag({1.0, 0.0})), kX, kY); }) == Errc::not_in_ba);
}

TEST_CASE("product_sum bounds") {
    const Metric m = build_metric(kA12);
    const CMatrix id = eye(2);
    SUBCASE("t = 1 shape") {
        const BoundRecord r = product_sum_upper(m, id, id, kX, kY, 1.0, +1);
        const double nx = 1.0 / kSqrt2, ny = 1.0;
        const double alpha = offdiag_alpha(m, kX, kY);
        CHECK(r.value * r.value == doctest::Approx(4 * (std::pow(nx * nx + ny * ny, 2) + alpha * alpha)));
    }
    SUBCASE("published values") {
        CHECK(product_sum_upper_b(m, id, id, kX, kY, +1).value == doctest::Approx(3.240466).epsilon(5e-4));
        CHECK(product_sum_upper_c(m, id, id, kX, kY, +1).value == doctest::Approx(3.26928).epsilon(5e-4));
    }
    SUBCASE("sign flip with negated Y") {
        CHECK(product_sum_upper(m, id, id, kX, -kY, 0.7, -1).value ==
              doctest::Approx(product_sum_upper(m, id, id, kX, kY, 0.7, +1).value));
    }
    SUBCASE("identity everything is tight") {
        const Metric mi = build_metric(id);
        const BoundRecord b = product_sum_upper_b(mi, id, id, id, id, +1);
        CHECK(b.value == doctest::Approx(std::sqrt(20.0)));
        CHECK(dw_radius(mi, 2.0 * id).value == doctest::Approx(std::sqrt(20.0)));
    }
    SUBCASE("variant b is the t = sqrt(||Q||/||P||) member") {
        const CMatrix p = mat({{1.0, 0.5}, {0.0, 2.0}});
        const CMatrix q = mat({{0.3, 0.0}, {1.0, 1.0}});
        const double t = std::sqrt(op_seminorm(m, q).value / op_seminorm(m, p).value);
        CHECK(product_sum_upper_b(m, p, q, kX, kY, +1).value ==
              doctest::Approx(product_sum_upper(m, p, q, kX, kY, t, +1).value).epsilon(1e-10));
    }
    SUBCASE("target") {
        CHECK(close(product_sum_target(m, id, id, kX, kY, +1), kX + kY));
    }
    SUBCASE("errors") {
        CHECK(code_of([&] { product_sum_upper(m, id, id, kX, kY, 0.0, +1); }) == Errc::zero_t);
        const CMatrix o = CMatrix::Zero(2, 2);
        CHECK(code_of([&] { product_sum_upper_b(m, o, id, kX, kY, +1); }) == Errc::degenerate_norm);
        CHECK(code_of([&] { product_sum_upper_c(m, id, id, o, kY, +1); }) == Errc::degenerate_norm);
    }
}

TEST_CASE("equality diagnostics") {
    const Metric m = build_metric(kA12);
    SUBCASE("normaloid") {
        Rng rng(6);
        const Metric r = build_metric(random_psd(rng, 3, 1));
        const Diagnostic d = normaloid_equality_check(r, random_a_selfadjoint(rng, r));
        CHECK(d.condition_a);
        CHECK(d.condition_b);
        CHECK(d.consistent);
        const Diagnostic x = normaloid_equality_check(m, kX);
        CHECK_FALSE(x.condition_a);
        CHECK_FALSE(x.condition_b);
        CHECK(x.consistent);
    }
    SUBCASE("zero") {
        const Diagnostic z = zero_equality_check(m, CMatrix::Zero(2, 2));
        CHECK(z.condition_a);
        CHECK(z.condition_b);
        const Diagnostic n = zero_equality_check(build_metric(diag({1.0, 0.0})), mat({{0.0, 0.0}, {5.0, 0.0}}));
        CHECK(n.condition_a);
        CHECK(n.condition_b);
        const Diagnostic i = zero_equality_check(build_metric(eye(2)), eye(2));
        CHECK_FALSE(i.condition_a);
        CHECK_FALSE(i.condition_b);
        CHECK(i.consistent);
    }
    SUBCASE("norm squared") {
        const Diagnostic x = norm_sq_equality_check(m, kX);
        CHECK(x.condition_a);
        CHECK(x.residual_b <= 1e-12);
        CHECK_FALSE(norm_sq_equality_check(build_metric(eye(2)), eye(2)).condition_a);
        const Diagnostic n = norm_sq_equality_check(build_metric(eye(2)), mat({{0.0, 2.0}, {0.0, 0.0}}));
        CHECK(n.condition_a);
        CHECK(n.residual_b <= 1e-12);
    }
}

TEST_CASE("verify_all") {
    SUBCASE("identity") {
        const VerificationReport r = verify_all(build_metric(eye(2)), eye(2), 1);
        CHECK(r.pass);
        CHECK(r.dw == doctest::Approx(kSqrt2));
        for (const auto& rec : r.records) {
            if (!rec.applicable || !rec.graded) continue;
            if (rec.name == "sandwich_upper" || rec.name == "upper_buzano_i" || rec.name == "upper_buzano_ii" ||
                rec.name == "upper_triple" || rec.name == "upper_lambda_theta")
                CHECK(rec.gap <= 1e-8);
        }
    }
    SUBCASE("nilpotent under diag(1, 2)") {
        const VerificationReport r = verify_all(build_metric(kA12), kX, 1);
        CHECK(r.pass);
        CHECK(r.dw == doctest::Approx(0.5));
        CHECK(r.oracle_agrees);
    }
    SUBCASE("random instances, every record satisfied") {
        Rng rng(88);
        VerifyOptions opts;
        opts.oracle_samples = 5000;
        for (int i = 0; i < 12; ++i) {
            const Metric m = build_metric(random_psd(rng, 2 + i % 3, i % 4 == 3 ? 1 : 0));
            const VerificationReport r = verify_all(m, random_a_bounded(rng, m), 100 + i, opts);
            CAPTURE(i);
            CHECK(r.pass);
            for (const auto& rec : r.records)
                if (rec.applicable && rec.graded) CHECK(rec.satisfied);
        }
    }
    SUBCASE("rejects non A-bounded operators") {
        CHECK(code_of([] { verify_all(build_metric(diag({1.0, 0.0})), kX, 1); }) == Errc::not_a_bounded);
    }
}

TEST_CASE("verify_pair reproduces the published pair bounds") {
    const VerificationReport r = verify_pair(build_metric(kA12), kX, kY, 3);
    CHECK(r.pass);
    bool seen = false;
    for (const auto& rec : r.records)
        if (rec.name == "sum_upper") {
            seen = true;
            CHECK(rec.value == doctest::Approx(2.621320).epsilon(5e-4));
        }
    CHECK(seen);
}

TEST_CASE("grade and matrix_hash") {
    BoundRecord r;
    r.kind = BoundKind::upper;
    r.value = 1.0;
    grade(r, 1.0 + 5e-7, 1e-6);
    CHECK(r.satisfied);
    grade(r, 1.1, 1e-6);
    CHECK_FALSE(r.satisfied);
    r.kind = BoundKind::lower;
    grade(r, 0.9, 1e-6);
    CHECK_FALSE(r.satisfied);
    CHECK(matrix_hash(kX) == matrix_hash(kX));
    CHECK(matrix_hash(kX) != matrix_hash(kY));
    CHECK(matrix_hash(kX).size() == 16);
}
