#include "semihilbert/radii.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/rng.hpp"
#include "semihilbert/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace semihilbert {

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::exact_svd: return "exact_svd";
    case Method::theta_sweep: return "theta_sweep";
    case Method::multistart: return "multistart";
    case Method::oracle: return "oracle";
    case Method::closed_form: return "closed_form";
    }
    return "unknown";
}

namespace compressed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RadiusEstimate empty_estimate(Method method) {
    RadiusEstimate e;
    e.method = method;
    return e;
}

CVector normalized(const CVector& v) {
    const double n = v.norm();
    return n > 0.0 ? CVector(v / n) : v;
}

// Projection of g onto the real tangent space {v : Re(c*v) = 0} at unit c.
CVector tangent(const CVector& c, const CVector& g) { return g - c * std::real(c.dot(g)); }

struct DwState {
    Complex q;
    CVector nc;
    CVector wc;
    double s = 0.0;
    double f = 0.0;   // |q|² + s²
};

DwState dw_state(const Compressed& op, const CVector& c) {
    DwState st;
    st.nc = op.n * c;
    st.q = c.dot(st.nc);
    st.wc = op.w * c;
    st.s = st.wc.squaredNorm();
    st.f = std::norm(st.q) + st.s * st.s;
    return st;
}

// Half the Euclidean gradient of f at c: K c with K = q̄N + qN* + 2sW*W.
CVector dw_half_gradient(const Compressed& op, const CVector& c, const DwState& st) {
    return std::conj(st.q) * st.nc + st.q * (op.n.adjoint() * c) + 2.0 * st.s * (op.w.adjoint() * st.wc);
}

struct LocalResult {
    CVector c;
    double f = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

// Majorize-minimize steps (top eigenvector of K, monotone because f is convex
// in cc*) until the tangent gradient vanishes. MM steps are accepted unless f
// drops beyond rounding; near convergence the increase itself is below
// resolution, so progress is judged by the gradient. Projected gradient ascent
// with backtracking takes over if MM ever fails to ascend or stalls.
LocalResult dw_ascend(const Compressed& op, CVector c, const DwOptions& opts) {
    LocalResult out;
    const CMatrix gram = op.w.adjoint() * op.w;
    DwState st = dw_state(op, c);
    bool mm = true;
    double step = 0.25 / (1.0 + st.f);
    int it = 0;
    double residual = 0.0;
    double best_residual = std::numeric_limits<double>::infinity();
    int since_best = 0;
    for (; it < opts.max_iterations; ++it) {
        const CVector g = tangent(c, 2.0 * dw_half_gradient(op, c, st));
        // f is homogeneous of degree four in T, so the gradient is measured
        // relative to 1 + f.
        residual = g.norm() / (1.0 + st.f);
        if (residual <= opts.gradient_tol) break;
        if (residual < 0.5 * best_residual) {
            best_residual = residual;
            since_best = 0;
        } else if (++since_best > 200) {
            if (!mm) break;
            mm = false;
            since_best = 0;
        }
        if (mm) {
            CMatrix k = std::conj(st.q) * op.n + st.q * op.n.adjoint() + 2.0 * st.s * gram;
            k = hermitian_part(k);
            CVector next = top_eigenvector(k);
            const Complex overlap = next.dot(c);
            if (std::abs(overlap) > 0.0) next *= overlap / std::abs(overlap);
            const DwState nst = dw_state(op, next);
            if (nst.f >= st.f - 1e-14 * (1.0 + st.f)) {
                c = next;
                st = nst;
                continue;
            }
            mm = false;
        }
        bool moved = false;
        double alpha = step;
        const double gg = g.squaredNorm();
        for (int bt = 0; bt < 60; ++bt) {
            const CVector trial = normalized(c + alpha * g);
            const DwState tst = dw_state(op, trial);
            if (tst.f >= st.f + 1e-4 * alpha * gg) {
                c = trial;
                st = tst;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) break;
        step = std::min(alpha * 2.0, 1e6 / (1.0 + st.f));
    }
    out.c = c;
    out.f = st.f;
    out.iterations = it;
    out.residual = residual;
    return out;
}

// Stops early once |q| comes within `target` of zero from above: the caller
// passes the support-function lower bound, which certifies optimality.
LocalResult crawford_descend(const CMatrix& n, CVector c, int max_iterations, double scale, double target) {
    LocalResult out;
    auto value = [&](const CVector& v) { return std::norm(v.dot(n * v)); };
    double f = value(c);
    double step = 1.0 / std::max(scale * scale, 1e-300);
    int it = 0;
    double residual = 0.0;
    const CMatrix nh = n.adjoint();
    for (; it < max_iterations; ++it) {
        const Complex q = c.dot(n * c);
        const CVector g = tangent(c, 2.0 * (std::conj(q) * (n * c) + q * (nh * c)));
        residual = g.norm();
        if (residual <= 1e-13 * std::max(1.0, scale * scale) || std::sqrt(f) <= target) break;
        bool moved = false;
        double alpha = step;
        const double gg = g.squaredNorm();
        for (int bt = 0; bt < 60; ++bt) {
            const CVector trial = normalized(c - alpha * g);
            const double tf = value(trial);
            if (tf <= f - 1e-4 * alpha * gg) {
                c = trial;
                f = tf;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) break;
        step = std::min(alpha * 2.0, 1e6 / std::max(scale * scale, 1e-300));
    }
    out.c = c;
    out.f = f;
    out.iterations = it;
    out.residual = residual;
    return out;
}

} // namespace

double quadratic_form_modulus(const CMatrix& n, const CVector& c) { return std::abs(c.dot(n * c)); }

double dw_objective(const Compressed& op, const CVector& c) { return std::sqrt(dw_state(op, c).f); }

double objective(const Compressed& op, Objective objective, const CVector& c) {
    switch (objective) {
    case Objective::dw: return dw_objective(op, c);
    case Objective::crawford:
    case Objective::numrad: return quadratic_form_modulus(op.n, c);
    }
    return 0.0;
}

RadiusEstimate seminorm(const Compressed& op) {
    RadiusEstimate e = empty_estimate(Method::exact_svd);
    if (op.w.cols() == 0) return e;
    Eigen::JacobiSVD<CMatrix> svd(op.w, Eigen::ComputeThinV);
    e.value = svd.singularValues()(0);
    e.maximizer = svd.matrixV().col(0);
    fix_phase(e.maximizer);
    e.residual = std::abs((op.w * e.maximizer).norm() - e.value);
    return e;
}

RadiusEstimate min_modulus(const Compressed& op) {
    RadiusEstimate e = empty_estimate(Method::exact_svd);
    const Eigen::Index r = op.w.cols();
    if (r == 0) return e;
    Eigen::JacobiSVD<CMatrix> svd(op.w, Eigen::ComputeThinV);
    e.value = svd.singularValues()(r - 1);
    e.maximizer = svd.matrixV().col(r - 1);
    fix_phase(e.maximizer);
    e.residual = std::abs((op.w * e.maximizer).norm() - e.value);
    return e;
}

RadiusEstimate numerical_radius(const CMatrix& n, int grid) {
    RadiusEstimate e = empty_estimate(Method::theta_sweep);
    if (n.cols() == 0) return e;
    SweepOptions so;
    so.grid = grid;
    const SweepResult sr = maximize_periodic([&](double th) { return rotated_lambda_max(n, th); }, kTwoPi, so);
    const Complex phase = std::polar(1.0, sr.argmax);
    CVector c = top_eigenvector(hermitian_part(phase * n));
    fix_phase(c);
    // |c*Nc| ≥ Re(e^{iθ}c*Nc) = λ_max, so the witness never undercuts the sweep.
    e.value = std::max(quadratic_form_modulus(n, c), sr.value);
    e.maximizer = c;
    e.iterations = sr.evaluations;
    e.residual = sr.bracket;
    return e;
}

RadiusEstimate crawford(const CMatrix& n, const CrawfordOptions& opts) {
    RadiusEstimate e = empty_estimate(Method::multistart);
    const Eigen::Index r = n.cols();
    if (r == 0) return e;
    const double scale = std::max(n.norm(), 1e-300);

    // dist(0, W(N)) = max(0, max_θ λ_min(Re(e^{iθ}N))) since W(N) is convex.
    SweepOptions so;
    so.grid = opts.support_grid;
    const SweepResult sr = maximize_periodic([&](double th) { return rotated_lambda_min(n, th); }, kTwoPi, so);
    const double support = std::max(0.0, sr.value);

    std::vector<CVector> starts;
    starts.push_back(bottom_eigenvector(hermitian_part(std::polar(1.0, sr.argmax) * n)));
    const Rng base(opts.seed);
    for (int k = 0; k < opts.random_starts; ++k) {
        Rng rng = base.split(static_cast<std::uint64_t>(k));
        starts.push_back(rng.unit_vector(r));
    }

    const double target = support + 1e-12 * (1.0 + scale);
    double best = std::numeric_limits<double>::infinity();
    int total = 0;
    for (const CVector& s : starts) {
        const LocalResult lr = crawford_descend(n, s, opts.max_iterations, scale, target);
        total += lr.iterations;
        const double v = std::sqrt(lr.f);
        if (v < best) {
            best = v;
            e.maximizer = lr.c;
            e.residual = lr.residual;
        }
        if (best <= target) break;   // certified by the support bound
    }
    fix_phase(e.maximizer);
    e.value = quadratic_form_modulus(n, e.maximizer);
    e.iterations = total;
    // The two routes bracket the same number; disagreement means one stalled.
    e.warning = std::abs(e.value - support) > 1e-6 * (1.0 + scale);
    return e;
}

RadiusEstimate dw_radius(const Compressed& op, const DwOptions& opts) {
    RadiusEstimate e = empty_estimate(Method::multistart);
    const Eigen::Index r = op.w.cols();
    if (r == 0) return e;

    std::vector<CVector> starts;
    starts.push_back(seminorm(op).maximizer);
    starts.push_back(numerical_radius(op.n).maximizer);
    const Rng base(opts.seed);
    for (int k = 0; k < opts.random_starts; ++k) {
        Rng rng = base.split(static_cast<std::uint64_t>(k));
        starts.push_back(rng.unit_vector(r));
    }

    double best = -1.0;
    int total = 0;
    for (const CVector& s : starts) {
        const LocalResult lr = dw_ascend(op, s, opts);
        total += lr.iterations;
        if (lr.f > best) {   // strict: ties keep the earlier start
            best = lr.f;
            e.maximizer = lr.c;
            e.residual = lr.residual;
        }
    }
    fix_phase(e.maximizer);
    e.value = dw_objective(op, e.maximizer);
    e.iterations = total;
    e.warning = e.residual > std::max(1e-6, opts.gradient_tol);
    return e;
}

RadiusEstimate oracle(const Compressed& op, Objective objective_kind, int samples, std::uint64_t seed) {
    RadiusEstimate e = empty_estimate(Method::oracle);
    const Eigen::Index r = op.w.cols();
    if (r > kOracleMaxRank)
        throw Error(Errc::rank_too_large, "sampling oracle supports rank(A) <= " + std::to_string(kOracleMaxRank));
    if (r == 0) return e;

    const bool minimize = objective_kind == Objective::crawford;
    auto score = [&](const CVector& c) {
        const double v = objective(op, objective_kind, c);
        return minimize ? -v : v;
    };

    const Rng base(seed);
    Rng sampler = base.split(1);
    Rng refiner = base.split(2);

    constexpr std::size_t kKeep = 10;
    std::vector<std::pair<double, CVector>> best;
    const int n_samples = std::max(samples, 1);
    for (int i = 0; i < n_samples; ++i) {
        CVector c = sampler.unit_vector(r);
        const double s = score(c);
        if (best.size() < kKeep || s > best.back().first) {
            best.emplace_back(s, std::move(c));
            std::stable_sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            if (best.size() > kKeep) best.pop_back();
        }
    }

    // Derivative-free hill climbing with an adaptive perturbation size.
    const double dim_scale = 1.0 / std::sqrt(2.0 * static_cast<double>(r));
    const int patience = 4 * static_cast<int>(r) + 4;
    int evaluations = n_samples;
    double top = -std::numeric_limits<double>::infinity();
    for (auto& [s, c] : best) {
        double sigma = 0.25;
        int fails = 0;
        int budget = 20000;
        while (sigma > 1e-10 && budget-- > 0) {
            const CVector trial = normalized(c + refiner.gaussian(r, 1) * (sigma * dim_scale));
            const double ts = score(trial);
            ++evaluations;
            if (ts > s) {
                s = ts;
                c = trial;
                sigma = std::min(sigma * 1.5, 0.5);
                fails = 0;
            } else if (++fails >= patience) {
                sigma *= 0.5;
                fails = 0;
            }
        }
        if (s > top) {
            top = s;
            e.maximizer = c;
        }
    }
    fix_phase(e.maximizer);
    e.value = objective(op, objective_kind, e.maximizer);
    e.iterations = evaluations;
    return e;
}

} // namespace compressed

namespace {

RadiusEstimate lift(const Metric& m, RadiusEstimate e) {
    if (e.maximizer.size() > 0) e.witness = m.ambient(e.maximizer);
    else e.witness = CVector::Zero(m.dim());
    return e;
}

} // namespace

RadiusEstimate op_seminorm(const Metric& m, const CMatrix& t) {
    return lift(m, compressed::seminorm(compress(m, t)));
}

RadiusEstimate min_modulus(const Metric& m, const CMatrix& t) {
    return lift(m, compressed::min_modulus(compress(m, t)));
}

RadiusEstimate numerical_radius(const Metric& m, const CMatrix& t, int grid) {
    return lift(m, compressed::numerical_radius(compress(m, t).n, grid));
}

RadiusEstimate crawford(const Metric& m, const CMatrix& t, const CrawfordOptions& opts) {
    return lift(m, compressed::crawford(compress(m, t).n, opts));
}

RadiusEstimate dw_radius(const Metric& m, const CMatrix& t, const DwOptions& opts) {
    return lift(m, compressed::dw_radius(compress(m, t), opts));
}

RadiusEstimate oracle_extremum(const Metric& m, const CMatrix& t, Objective objective, int samples,
                               std::uint64_t seed) {
    return lift(m, compressed::oracle(compress(m, t), objective, samples, seed));
}

} // namespace semihilbert
