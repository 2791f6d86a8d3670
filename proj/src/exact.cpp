#include "semihilbert/exact.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace semihilbert {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void theta_candidates(const std::vector<double>& roots, double b, CardanoData& d) {
    double best = -1.0;
    for (double t : roots) {
        const double th = std::atan(t);
        if (th < 0.0 || th > kHalfPi) continue;
        const double v = phi(th, b);
        if (v > best) {
            best = v;
            d.theta0 = th;
        }
    }
    if (best < 0.0) {
        // No root in range (cannot happen for b > 0); fall back to the maximizer.
        d.theta0 = maximize_phi(b).theta;
    }
}

} // namespace

std::vector<double> real_cubic_roots(double p, double q, double r) {
    // t = y − p/3 gives y³ + P y + Q = 0.
    const double P = q - p * p / 3.0;
    const double Q = (2.0 * p * p * p - 9.0 * p * q + 27.0 * r) / 27.0;
    const double shift = -p / 3.0;
    const double disc = Q * Q / 4.0 + P * P * P / 27.0;
    std::vector<double> roots;
    if (P == 0.0) {
        roots.push_back(std::cbrt(-Q) + shift);
    } else if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        roots.push_back(std::cbrt(-Q / 2.0 + sq) + std::cbrt(-Q / 2.0 - sq) + shift);
    } else {
        const double m = 2.0 * std::sqrt(-P / 3.0);
        const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
        const double base = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(base - 2.0 * std::numbers::pi * k / 3.0) + shift);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

CardanoData cardano_theta0(double b, bool force_trig) {
    if (!(b > 0.0) || !std::isfinite(b)) throw Error(Errc::nonpositive_b, "b must be a positive finite real");
    CardanoData d;
    d.b = b;
    const double b2 = b * b;
    d.p = -(2.0 * b2 - 5.0) / (2.0 * b);
    d.q = -(2.0 * b2 - 2.0) / b2;
    d.r = -3.0 / (2.0 * b);
    const double b4 = b2 * b2;
    const double b6 = b4 * b2;
    d.s = (8.0 * b4 * b4 + 20.0 * b6 + 45.0 * b4 + 61.0 * b2 + 28.0) / (16.0 * 27.0 * b6);
    d.alpha = (2.0 * d.p * d.p * d.p - 9.0 * d.p * d.q + 27.0 * d.r) / 27.0;
    if (d.s >= 0.0) {
        const double root_s = std::sqrt(d.s);
        d.beta = std::cbrt(-d.alpha / 2.0 + root_s);
        d.gamma = std::cbrt(-d.alpha / 2.0 - root_s);
    } else {
        d.beta = std::numeric_limits<double>::quiet_NaN();
        d.gamma = std::numeric_limits<double>::quiet_NaN();
    }
    if (d.s >= 0.0 && !force_trig) {
        d.theta0 = std::atan(d.beta + d.gamma - d.p / 3.0);
    } else {
        d.used_trig_fallback = true;
        theta_candidates(real_cubic_roots(d.p, d.q, d.r), b, d);
    }
    return d;
}

double phi(double theta, double b) {
    const double c = std::cos(theta);
    const double u = c + b * std::sin(theta);
    return u * u * (c * c + u * u);
}

double psi(double theta, double b) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double b2 = b * b;
    return b2 * s * s * c * c + b2 * b2 * s * s * s * s;
}

namespace {

PhiMax maximize_on_quarter(const std::function<double(double)>& f, int grid) {
    SweepOptions so;
    so.grid = grid;
    so.width = 1e-12;
    const SweepResult sr = maximize_interval(f, 0.0, kHalfPi, so);
    return PhiMax{sr.argmax, sr.value, sr.evaluations};
}

} // namespace

PhiMax maximize_phi(double b, int grid) {
    return maximize_on_quarter([b](double th) { return phi(th, b); }, grid);
}

PhiMax maximize_psi(double b, int grid) {
    return maximize_on_quarter([b](double th) { return psi(th, b); }, grid);
}

double dw_ix_value(double b) {
    if (b <= 0.0) return std::sqrt(2.0);
    const CardanoData d = cardano_theta0(b);
    const double u = std::cos(d.theta0) + b * std::sin(d.theta0);
    const double c = std::cos(d.theta0);
    return u * std::sqrt(c * c + u * u);
}

double dw_0x_value(double b) {
    if (b <= 0.0) return 0.0;
    if (b >= std::numbers::sqrt2 / 2.0) return b * b;
    return b / (2.0 * std::sqrt(1.0 - b * b));
}

namespace {

// Seminorms at rounding level come from operators with AX = 0 up to noise;
// their maximizing direction is meaningless, so they take the b = 0 branch.
constexpr double kZeroSeminorm = 1e-12;

struct BlockSetup {
    Metric metric2;
    double b = 0.0;
    CVector y;    // A-unit seminorm maximizer of X
    CVector xy;   // X y, with ‖Xy‖_A = b
    Eigen::Index n = 0;
};

BlockSetup setup(const Metric& m, const CMatrix& x) {
    require_operator(m, x, "X");
    BlockSetup s{doubled(m), 0.0, {}, {}, m.dim()};
    const RadiusEstimate norm = op_seminorm(m, x);
    s.b = norm.value <= kZeroSeminorm ? 0.0 : norm.value;
    s.y = norm.witness;
    s.xy = x * s.y;
    return s;
}

// (first, second) stacked, scaled to unit diag(A, A)-seminorm.
CVector stack(const Metric& m, const CVector& first, const CVector& second) {
    CVector z(first.size() + second.size());
    z << first, second;
    const double nrm = std::sqrt(std::pow(semi_norm(m, first), 2) + std::pow(semi_norm(m, second), 2));
    if (nrm > 0.0) z /= nrm;
    return z;
}

RadiusEstimate finish(const BlockSetup& s, const CVector& z, double closed, const PhiMax& grid) {
    RadiusEstimate e;
    e.method = Method::closed_form;
    e.witness = z;
    if (s.metric2.rank() > 0) {
        e.maximizer = s.metric2.coordinates(z);
        const double nrm = e.maximizer.norm();
        if (nrm > 0.0) e.maximizer /= nrm;
    }
    const double grid_value = std::sqrt(std::max(grid.value, 0.0));
    e.iterations = grid.evaluations;
    e.residual = std::abs(closed - grid_value);
    if (e.residual > kExactAgreementTol * std::max(1.0, closed)) {
        e.warning = true;
        e.value = grid_value;
    } else {
        e.value = closed;
    }
    return e;
}

RadiusEstimate empty_metric_estimate(const Metric& m) {
    RadiusEstimate e;
    e.method = Method::closed_form;
    e.witness = CVector::Zero(2 * m.dim());
    return e;
}

} // namespace

RadiusEstimate dw_exact_ix(const Metric& m, const CMatrix& x) {
    if (m.rank() == 0) {
        require_operator(m, x, "X");
        return empty_metric_estimate(m);
    }
    const BlockSetup s = setup(m, x);
    const CVector zero = CVector::Zero(s.n);
    if (s.b <= 0.0) {
        // 𝕋(u, 0) = (u, 0) for any A-unit u.
        const CVector u = m.ambient(CVector::Unit(m.rank(), 0));
        return finish(s, stack(m, u, zero), std::sqrt(2.0), PhiMax{0.0, 2.0, 0});
    }
    const CardanoData d = cardano_theta0(s.b);
    const double k = s.b * std::tan(d.theta0);
    const CVector z = stack(m, s.xy, k * s.y);
    return finish(s, z, dw_ix_value(s.b), maximize_phi(s.b));
}

RadiusEstimate dw_exact_0x(const Metric& m, const CMatrix& x) {
    if (m.rank() == 0) {
        require_operator(m, x, "X");
        return empty_metric_estimate(m);
    }
    const BlockSetup s = setup(m, x);
    const CVector zero = CVector::Zero(s.n);
    if (s.b <= 0.0) {
        const CVector u = m.ambient(CVector::Unit(m.rank(), 0));
        return finish(s, stack(m, u, zero), 0.0, PhiMax{0.0, 0.0, 0});
    }
    CVector z;
    if (s.b >= std::numbers::sqrt2 / 2.0) {
        z = stack(m, zero, s.y);
    } else {
        const double k = s.b / std::sqrt(1.0 - 2.0 * s.b * s.b);
        z = stack(m, s.xy, k * s.y);
    }
    return finish(s, z, dw_0x_value(s.b), maximize_psi(s.b));
}

} // namespace semihilbert
