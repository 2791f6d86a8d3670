#include "semihilbert/bounds.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/rng.hpp"
#include "semihilbert/semiop.hpp"
#include "semihilbert/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>

namespace semihilbert {

std::string_view to_string(BoundKind kind) noexcept {
    switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::exact: return "exact";
    }
    return "unknown";
}

void grade(BoundRecord& record, double dw, double tol) {
    record.reference_dw = dw;
    if (!record.applicable) {
        record.graded = false;
        record.satisfied = true;
        record.gap = 0.0;
        return;
    }
    record.graded = true;
    switch (record.kind) {
    case BoundKind::upper:
        record.gap = record.value - dw;
        record.satisfied = record.gap >= -tol;
        break;
    case BoundKind::lower:
        record.gap = dw - record.value;
        record.satisfied = record.gap >= -tol;
        break;
    case BoundKind::exact:
        record.gap = record.value - dw;
        record.satisfied = std::abs(record.gap) <= tol;
        break;
    }
}

std::string matrix_hash(const CMatrix& t) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::int64_t dims[2] = {t.rows(), t.cols()};
    feed(dims, sizeof dims);
    for (Eigen::Index i = 0; i < t.rows(); ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            const double parts[2] = {t(i, j).real(), t(i, j).imag()};
            feed(parts, sizeof parts);
        }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace {

// Memoized A-functionals of operators under one metric.
class Radii {
public:
    explicit Radii(const Metric& m) : m_(m) {}

    const Metric& metric() const { return m_; }

    const Compressed& comp(const CMatrix& t) { return entry(t).op; }
    double norm(const CMatrix& t) { return get(t, &Entry::norm, [](const Entry& e) { return compressed::seminorm(e.op).value; }); }
    double minmod(const CMatrix& t) {
        return get(t, &Entry::minmod, [](const Entry& e) { return compressed::min_modulus(e.op).value; });
    }
    double w(const CMatrix& t) {
        return get(t, &Entry::w, [](const Entry& e) { return compressed::numerical_radius(e.op.n).value; });
    }
    double c(const CMatrix& t) {
        return get(t, &Entry::c, [](const Entry& e) { return compressed::crawford(e.op.n).value; });
    }
    double dw(const CMatrix& t) {
        return get(t, &Entry::dw, [](const Entry& e) { return compressed::dw_radius(e.op).value; });
    }

private:
    struct Entry {
        Compressed op;
        std::optional<double> norm, minmod, w, c, dw;
    };

    static std::string key(const CMatrix& t) {
        std::string k(sizeof(Complex) * static_cast<std::size_t>(t.size()) + 2 * sizeof(Eigen::Index), '\0');
        const Eigen::Index dims[2] = {t.rows(), t.cols()};
        std::memcpy(k.data(), dims, sizeof dims);
        std::memcpy(k.data() + sizeof dims, t.data(), sizeof(Complex) * static_cast<std::size_t>(t.size()));
        return k;
    }

    Entry& entry(const CMatrix& t) {
        std::string k = key(t);
        auto it = cache_.find(k);
        if (it == cache_.end()) it = cache_.emplace(std::move(k), Entry{compress(m_, t), {}, {}, {}, {}, {}}).first;
        return it->second;
    }

    double get(const CMatrix& t, std::optional<double> Entry::*slot, const std::function<double(const Entry&)>& f) {
        Entry& e = entry(t);
        if (!(e.*slot)) e.*slot = f(e);
        return *(e.*slot);
    }

    const Metric& m_;
    std::map<std::string, Entry> cache_;
};

BoundRecord make(std::string name, std::string anchor, BoundKind kind, double value) {
    BoundRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.kind = kind;
    r.value = value;
    return r;
}

double safe_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

// Largest |eigenvalue| shifted by mu: max |λ − mu| over the spectrum of a
// Hermitian matrix, using its extreme eigenvalues.
struct Extremes {
    double lo = 0.0;
    double hi = 0.0;
    double shifted(double mu) const { return std::max(std::abs(hi - mu), std::abs(lo - mu)); }
};

Extremes extremes(const CMatrix& h) {
    if (h.rows() == 0) return {};
    if (h.rows() == 1) return {h(0, 0).real(), h(0, 0).real()};
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(h.rows() - 1)};
}

CMatrix identity_like(const CMatrix& t) { return CMatrix::Identity(t.rows(), t.cols()); }

// --- single-operator bounds -------------------------------------------------

std::pair<BoundRecord, BoundRecord> sandwich_impl(Radii& R, const CMatrix& t) {
    const double w = R.w(t);
    const double n = R.norm(t);
    BoundRecord lo = make("sandwich_lower", "dw(T) >= max(w(T), ||T||^2)", BoundKind::lower, std::max(w, n * n));
    BoundRecord up = make("sandwich_upper", "dw(T) <= sqrt(w(T)^2 + ||T||^4)", BoundKind::upper, std::sqrt(w * w + n * n * n * n));
    lo.params = {{"w", w}, {"norm", n}};
    up.params = lo.params;
    return {lo, up};
}

std::array<BoundRecord, 4> lower_crawford_impl(Radii& R, const CMatrix& t) {
    const Metric& m = R.metric();
    const CMatrix s = abs_sq(m, t);
    const double w = R.w(t);
    const double n = R.norm(t);
    const double cs = R.c(s);
    const double ct = R.c(t);
    std::array<BoundRecord, 4> out{
        make("lower_crawford_w_cs", "dw(T)^2 >= w(T)^2 + c(|T|^2)^2", BoundKind::lower, std::sqrt(w * w + cs * cs)),
        make("lower_crawford_norm_ct", "dw(T)^2 >= ||T||^4 + c(T)^2", BoundKind::lower, std::sqrt(n * n * n * n + ct * ct)),
        make("lower_crawford_2w_cs", "dw(T)^2 >= 2 w(T) c(|T|^2)", BoundKind::lower, std::sqrt(2.0 * w * cs)),
        make("lower_crawford_2c_norm", "dw(T)^2 >= 2 c(T) ||T||^2", BoundKind::lower, std::sqrt(2.0 * ct * n * n)),
    };
    for (auto& r : out) r.params = {{"w", w}, {"norm", n}, {"c_T", ct}, {"c_absT2", cs}};
    return out;
}

BoundRecord upper_theta_sweep_impl(Radii& R, const CMatrix& t, const ThetaSweepOptions& opts) {
    const Metric& m = R.metric();
    const CMatrix s = abs_sq(m, t);
    const CMatrix nt = R.comp(t).n;
    const CMatrix ns = hermitian_part(R.comp(s).n);
    SweepOptions so;
    so.grid = opts.grid;
    so.width = opts.width;
    SweepResult sr;
    if (opts.nested) {
        sr = maximize_periodic(
            [&](double th) {
                const double w = compressed::numerical_radius(std::polar(1.0, th) * nt + ns, opts.inner_grid).value;
                return w * w;
            },
            2.0 * std::numbers::pi, so);
    } else {
        // N_S = N_T*N_T is positive semidefinite, so the inner phase of
        // w(e^{iθ}N_T + N_S) is optimal at zero and the double supremum
        // collapses to one sweep of λ_max(Re(e^{iθ}N_T) + N_S).
        sr = maximize_periodic(
            [&](double th) { return extremes(hermitian_part(std::polar(1.0, th) * nt) + ns).hi; }, 2.0 * std::numbers::pi,
            so);
        sr.value = std::max(sr.value, 0.0);
        sr.value *= sr.value;
    }
    const double ct = R.c(t);
    const double mt = R.minmod(t);
    BoundRecord r = make("upper_theta_sweep", "dw(T)^2 <= sup_theta w(e^{i theta} T + |T|^2)^2 - 2 c(T) m(T)^2",
                         BoundKind::upper, safe_sqrt(sr.value - 2.0 * ct * mt * mt));
    r.params = {{"theta_grid", opts.grid}, {"nested", opts.nested ? 1.0 : 0.0}, {"theta_argmax", sr.argmax},
                {"sup_w2", sr.value}, {"c_T", ct}, {"m_T", mt}};
    if (opts.nested) r.params.emplace_back("inner_grid", opts.inner_grid);
    return r;
}

std::pair<BoundRecord, BoundRecord> cartesian_half_impl(Radii& R, const CMatrix& t) {
    const CMatrix s = abs_sq(R.metric(), t);
    const CMatrix plus = t + s;
    const CMatrix minus = t - s;
    const double wp = R.w(plus);
    const double wm = R.w(minus);
    const double cm = R.c(minus);
    BoundRecord lo = make("cartesian_half_lower", "dw(T)^2 >= (w(T + |T|^2)^2 + c(T - |T|^2)^2) / 2", BoundKind::lower,
                          std::sqrt(0.5 * (wp * wp + cm * cm)));
    BoundRecord up = make("cartesian_half_upper", "dw(T)^2 <= (w(T + |T|^2)^2 + w(T - |T|^2)^2) / 2", BoundKind::upper,
                          std::sqrt(0.5 * (wp * wp + wm * wm)));
    lo.params = {{"w_plus", wp}, {"c_minus", cm}};
    up.params = {{"w_plus", wp}, {"w_minus", wm}};
    return {lo, up};
}

std::pair<BoundRecord, BoundRecord> upper_buzano_impl(Radii& R, const CMatrix& t) {
    const Metric& m = R.metric();
    const CMatrix s = abs_sq(m, t);
    const CMatrix ss = sharp(m, s) * s + s;
    const double first = R.norm(ss);
    const double w2 = R.w(t * t);
    const double n = R.norm(t);
    BoundRecord i = make("upper_buzano_i", "dw(T)^2 <= || |T|^2 + (|T|^2)^# |T|^2 ||", BoundKind::upper, std::sqrt(first));
    BoundRecord ii = make("upper_buzano_ii", "dw(T)^2 <= (w(T^2) + ||T||^2) / 2 + ||T||^4", BoundKind::upper,
                          std::sqrt(0.5 * (w2 + n * n) + n * n * n * n));
    i.params = {{"norm_S_plus_SsharpS", first}};
    ii.params = {{"w_T2", w2}, {"norm", n}};
    return {i, ii};
}

BoundRecord upper_triple_impl(Radii& R, const CMatrix& t) {
    const Metric& m = R.metric();
    const CMatrix s = abs_sq(m, t);
    const double head = R.norm(sharp(m, s) * s + s);
    const CMatrix plus = s + t;
    const CMatrix minus = s - t;
    const double cp = R.c(plus), mp = R.minmod(plus);
    const double cm = R.c(minus), mm = R.minmod(minus);
    BoundRecord r = make("upper_triple",
                         "dw(T)^2 <= 3 ||S^# S + S|| - c(S + T) m(S + T) - c(S - T) m(S - T), S = |T|^2",
                         BoundKind::upper, safe_sqrt(3.0 * head - cp * mp - cm * mm));
    r.params = {{"norm_SsharpS_plus_S", head}, {"c_plus", cp}, {"m_plus", mp}, {"c_minus", cm}, {"m_minus", mm}};
    return r;
}

std::pair<BoundRecord, BoundRecord> upper_lambda_theta_impl(Radii& R, const CMatrix& t, const LambdaThetaOptions& opts) {
    const Metric& m = R.metric();
    const CMatrix s = abs_sq(m, t);
    const CMatrix nr = hermitian_part(R.comp(re_a(m, t)).n);
    const CMatrix ni = hermitian_part(R.comp(im_a(m, t)).n);
    const CMatrix ns = hermitian_part(R.comp(s).n);
    const double n = R.norm(t);

    SweepOptions so;
    so.grid = opts.theta_grid;
    so.width = opts.width;
    auto sup_theta = [&](double lambda) {
        return maximize_periodic(
            [&](double th) {
                const CMatrix rot = std::cos(th) * nr + std::sin(th) * ni;
                const Extremes c = extremes(rot + ns);
                const Extremes d = extremes(rot - ns);
                const double c2 = c.shifted(2.0 * lambda);
                const double dn = d.shifted(0.0);
                return 2.0 * std::abs(lambda) * c.shifted(lambda) + 0.5 * c2 * c2 + 0.5 * dn * dn;
            },
            2.0 * std::numbers::pi, so);
    };

    const double span = 2.0 * n * n;
    std::vector<double> lambdas{0.0};
    const int pts = std::max(opts.lambda_points, 0);
    for (int k = 0; k < pts; ++k) {
        const double l = pts == 1 ? 0.0 : -span + 2.0 * span * k / (pts - 1);
        if (std::abs(l) > 0.0) lambdas.push_back(l);
    }

    const SweepResult zero = sup_theta(0.0);
    double best = zero.value, best_lambda = 0.0, best_theta = zero.argmax;
    for (std::size_t k = 1; k < lambdas.size(); ++k) {
        const SweepResult sr = sup_theta(lambdas[k]);
        if (sr.value < best) {
            best = sr.value;
            best_lambda = lambdas[k];
            best_theta = sr.argmax;
        }
    }
    const char* anchor = "dw(T)^2 <= inf_lambda sup_theta 2|lambda| ||C - lambda I|| + ||C - 2 lambda I||^2 / 2 + ||D||^2 / 2, "
                         "C, D = cos(theta) Re(T) +- |T|^2 + sin(theta) Im(T)";
    BoundRecord grid = make("upper_lambda_theta", anchor, BoundKind::upper, safe_sqrt(best));
    grid.params = {{"lambda_min", -span}, {"lambda_max", span}, {"lambda_points", pts}, {"theta_grid", opts.theta_grid},
                   {"lambda_argmin", best_lambda}, {"theta_argmax", best_theta}};
    BoundRecord at_zero = make("upper_lambda_theta_zero", anchor, BoundKind::upper, safe_sqrt(zero.value));
    at_zero.params = {{"lambda", 0.0}, {"theta_grid", opts.theta_grid}, {"theta_argmax", zero.argmax}};
    return {grid, at_zero};
}

std::pair<BoundRecord, BoundRecord> upper_lambda_complex_impl(Radii& R, const CMatrix& t,
                                                              const LambdaComplexOptions& opts) {
    const Metric& m = R.metric();
    const CMatrix s = abs_sq(m, t);
    const CMatrix nt = R.comp(t).n;
    const CMatrix nr = hermitian_part(R.comp(re_a(m, t)).n);
    const CMatrix ni = hermitian_part(R.comp(im_a(m, t)).n);
    const CMatrix ns = hermitian_part(R.comp(s).n);
    const CMatrix id = CMatrix::Identity(nt.rows(), nt.cols());
    const double w = R.w(t);

    // Re_A(conj(λ)T) compresses to Re(λ)·Re(N) + Im(λ)·Im(N).
    auto expr = [&](Complex lambda) {
        const CMatrix rl = lambda.real() * nr + lambda.imag() * ni;
        const double a = extremes(rl).shifted(0.0);
        const double b = extremes(ns - 2.0 * rl).shifted(0.0);
        const double wl = lambda == Complex{} ? w : compressed::numerical_radius(nt - lambda * id).value;
        return (2.0 * a + b) * (2.0 * a + b) + 2.0 * a - std::norm(lambda) + wl * wl;
    };

    const double zero = expr(Complex{});
    double best = zero;
    Complex arg{};
    if (w > 0.0) {
        for (int k = 1; k <= opts.radii; ++k) {
            const double rad = 2.0 * w * k / opts.radii;
            for (int j = 0; j < opts.phases; ++j) {
                const Complex lambda = std::polar(rad, 2.0 * std::numbers::pi * j / opts.phases);
                const double v = expr(lambda);
                if (v < best) {
                    best = v;
                    arg = lambda;
                }
            }
        }
    }
    const char* anchor = "dw(T)^2 <= inf_lambda (2 ||Re(conj(lambda) T)|| + || |T|^2 - 2 Re(conj(lambda) T) ||)^2 "
                         "+ 2 ||Re(conj(lambda) T)|| - |lambda|^2 + w(T - lambda I)^2";
    BoundRecord grid = make("upper_lambda_complex", anchor, BoundKind::upper, safe_sqrt(best));
    grid.params = {{"phases", opts.phases}, {"radii", opts.radii}, {"radius_max", 2.0 * w},
                   {"lambda_re", arg.real()}, {"lambda_im", arg.imag()}};
    BoundRecord at_zero = make("upper_lambda_complex_zero", anchor, BoundKind::upper, safe_sqrt(zero));
    at_zero.params = {{"lambda_re", 0.0}, {"lambda_im", 0.0}};
    return {grid, at_zero};
}

// --- pair bounds -------------------------------------------------------------

std::pair<BoundRecord, std::optional<BoundRecord>> sum_upper_impl(Radii& R, const CMatrix& x, const CMatrix& y) {
    const Metric& m = R.metric();
    const CMatrix cross = sharp(m, x) * y + sharp(m, y) * x;
    const double dx = R.dw(x);
    const double dy = R.dw(y);
    const double wc = R.w(cross);
    BoundRecord r = make("sum_upper", "dw(X + Y) <= dw(X) + dw(Y) + w(X^# Y + Y^# X)", BoundKind::upper, dx + dy + wc);
    r.params = {{"dw_X", dx}, {"dw_Y", dy}, {"w_cross", wc}};
    std::optional<BoundRecord> special;
    const double residual = (m.a() * cross).norm();
    if (residual <= 1e-10 * (1.0 + m.a().norm() * x.norm() * y.norm())) {
        special = make("sum_upper_special", "dw(X + Y) <= dw(X) + dw(Y) when A(X^# Y + Y^# X) = 0", BoundKind::upper, dx + dy);
        special->params = {{"dw_X", dx}, {"dw_Y", dy}, {"cross_residual", residual}};
    }
    return {r, special};
}

BoundRecord feki_impl(Radii& R, const CMatrix& x, const CMatrix& y) {
    const double s = R.dw(x) + R.dw(y);
    BoundRecord r = make("feki_sum_upper", "dw(X + Y)^2 <= 2 s + 4 s^2, s = dw(X) + dw(Y)", BoundKind::upper,
                         std::sqrt(2.0 * s + 4.0 * s * s));
    r.params = {{"s", s}};
    return r;
}

BoundRecord offdiag_impl(Radii& R, const CMatrix& x, const CMatrix& y) {
    const Metric& m = R.metric();
    if (!in_ba(m, x) || !in_ba(m, y)) throw Error(Errc::not_in_ba, "offdiag_upper needs X, Y with A-adjoints");
    const double nx = R.norm(x);
    const double ny = R.norm(y);
    auto term = [](double v) { return std::sqrt(0.25 * v * v + v * v * v * v); };
    BoundRecord r = make("offdiag_upper",
                         "dw([[O, X], [Y, O]]) <= sqrt(||X||^2 / 4 + ||X||^4) + sqrt(||Y||^2 / 4 + ||Y||^4)",
                         BoundKind::upper, term(nx) + term(ny));
    r.params = {{"norm_X", nx}, {"norm_Y", ny}};
    return r;
}

struct ProductNorms {
    double p = 0.0, q = 0.0, px = 0.0, qy = 0.0, alpha = 0.0;
};

ProductNorms product_norms(Radii& R, const CMatrix& p, const CMatrix& q, const CMatrix& x, const CMatrix& y) {
    const Metric& m = R.metric();
    for (const CMatrix* op : {&p, &q, &x, &y})
        if (!in_ba(m, *op)) throw Error(Errc::not_in_ba, "product-sum bound needs P, Q, X, Y with A-adjoints");
    ProductNorms out;
    out.p = R.norm(p);
    out.q = R.norm(q);
    out.px = R.norm(p * x);
    out.qy = R.norm(q * y);
    out.alpha = offdiag_alpha(m, x, y);
    return out;
}

void product_params(BoundRecord& r, const ProductNorms& pn, double t) {
    r.params = {{"t", t}, {"norm_P", pn.p}, {"norm_Q", pn.q}, {"norm_PX", pn.px}, {"norm_QY", pn.qy}, {"alpha", pn.alpha}};
}

const char* kProductAnchor = "dw(P X Q^# +- Q Y P^#)^2 <= (t^2 ||P||^2 + ||Q||^2 / t^2)^2 ((t^2 ||PX||^2 + ||QY||^2 / t^2)^2 + alpha^2)";

BoundRecord product_sum_impl(Radii& R, const CMatrix& p, const CMatrix& q, const CMatrix& x, const CMatrix& y,
                             double t) {
    if (t == 0.0 || !std::isfinite(t)) throw Error(Errc::zero_t, "t must be a nonzero finite real");
    const ProductNorms pn = product_norms(R, p, q, x, y);
    const double t2 = t * t;
    const double outer = t2 * pn.p * pn.p + pn.q * pn.q / t2;
    const double inner = t2 * pn.px * pn.px + pn.qy * pn.qy / t2;
    BoundRecord r = make("product_sum_upper", kProductAnchor, BoundKind::upper,
                         outer * std::sqrt(inner * inner + pn.alpha * pn.alpha));
    product_params(r, pn, t);
    return r;
}

constexpr double kDegenerate = 1e-14;

BoundRecord product_sum_b_impl(Radii& R, const CMatrix& p, const CMatrix& q, const CMatrix& x, const CMatrix& y) {
    const ProductNorms pn = product_norms(R, p, q, x, y);
    if (pn.p <= kDegenerate || pn.q <= kDegenerate)
        throw Error(Errc::degenerate_norm, "||P||_A and ||Q||_A must be nonzero");
    const double inner = pn.q / pn.p * pn.px * pn.px + pn.p / pn.q * pn.qy * pn.qy;
    BoundRecord r = make("product_sum_upper_b",
                         "dw(P X Q^# +- Q Y P^#)^2 <= 4 ||P||^2 ||Q||^2 ((||Q|| / ||P||) ||PX||^2 + (||P|| / ||Q||) ||QY||^2)^2 + alpha^2)",
                         BoundKind::upper,
                         std::sqrt(4.0 * pn.p * pn.p * pn.q * pn.q * (inner * inner + pn.alpha * pn.alpha)));
    product_params(r, pn, std::sqrt(pn.q / pn.p));
    return r;
}

BoundRecord product_sum_c_impl(Radii& R, const CMatrix& p, const CMatrix& q, const CMatrix& x, const CMatrix& y) {
    const ProductNorms pn = product_norms(R, p, q, x, y);
    if (pn.px <= kDegenerate || pn.qy <= kDegenerate)
        throw Error(Errc::degenerate_norm, "||PX||_A and ||QY||_A must be nonzero");
    const double outer = pn.qy / pn.px * pn.p * pn.p + pn.px / pn.qy * pn.q * pn.q;
    BoundRecord r = make("product_sum_upper_c",
                         "dw(P X Q^# +- Q Y P^#)^2 <= ((||QY|| / ||PX||) ||P||^2 + (||PX|| / ||QY||) ||Q||^2)^2 (4 ||PX||^2 ||QY||^2 + alpha^2)",
                         BoundKind::upper,
                         outer * std::sqrt(4.0 * pn.px * pn.px * pn.qy * pn.qy + pn.alpha * pn.alpha));
    product_params(r, pn, std::sqrt(pn.qy / pn.px));
    return r;
}

// --- diagnostics -------------------------------------------------------------

Diagnostic normaloid_impl(Radii& R, const CMatrix& t, double tol) {
    const double w = R.w(t);
    const double n = R.norm(t);
    const double dw = R.dw(t);
    const double eff = tol * (1.0 + dw);
    Diagnostic d;
    d.name = "normaloid_equality";
    d.residual_a = std::abs(w - n);
    d.residual_b = std::abs(dw - std::sqrt(w * w + n * n * n * n));
    d.condition_a = d.residual_a <= eff;
    d.condition_b = d.residual_b <= eff;
    d.consistent = d.condition_a == d.condition_b;
    const RadiusEstimate wit = compressed::numerical_radius(R.comp(t).n);
    if (wit.maximizer.size() > 0) {
        const double attained = (R.comp(t).w * wit.maximizer).norm();
        if (d.condition_a && attained >= n - eff) {
            d.witness = R.metric().ambient(wit.maximizer);
            d.note = "numerical-radius witness also attains the seminorm";
        } else if (d.condition_a) {
            d.consistent = false;
            d.note = "no joint witness found";
        }
    }
    return d;
}

Diagnostic zero_impl(Radii& R, const CMatrix& t, double tol) {
    const Metric& m = R.metric();
    const double w = R.w(t);
    const double dw = R.dw(t);
    Diagnostic d;
    d.name = "zero_equality";
    d.residual_a = (m.a() * t).norm();
    d.residual_b = std::abs(dw - w);
    d.condition_a = d.residual_a <= 1e-10 * (1.0 + m.a().norm() * t.norm());
    d.condition_b = d.residual_b <= tol * (1.0 + dw);
    d.consistent = d.condition_a == d.condition_b;
    return d;
}

Diagnostic norm_sq_impl(Radii& R, const CMatrix& t, double tol) {
    const double n = R.norm(t);
    const double dw = R.dw(t);
    const double eff = tol * (1.0 + dw);
    Diagnostic d;
    d.name = "norm_sq_equality";
    d.residual_a = std::abs(dw - n * n);
    d.condition_a = d.residual_a <= eff;
    d.applicable = d.condition_a;
    if (!d.applicable) {
        d.note = "dw differs from ||T||^2; nothing to check";
        return d;
    }
    const Compressed& op = R.comp(t);
    if (op.w.cols() == 0) {
        d.condition_b = true;
        return d;
    }
    Eigen::JacobiSVD<CMatrix> svd(op.w, Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) < sv(0) - 1e-8 * (1.0 + sv(0))) break;
        const CVector v = svd.matrixV().col(k);
        worst = std::max(worst, compressed::quadratic_form_modulus(op.n, v));
        if (k == 0) d.witness = R.metric().ambient(v);
    }
    d.residual_b = worst;
    d.condition_b = worst <= eff;
    d.consistent = d.condition_b;
    return d;
}

// --- reports -----------------------------------------------------------------

BoundRecord not_applicable(const std::string& name, BoundKind kind, const std::string& why) {
    BoundRecord r = make(name, "", kind, 0.0);
    r.applicable = false;
    r.note = why;
    return r;
}

// Runs `fn`; on a library error emits placeholders for every catalog name.
void attempt(std::vector<BoundRecord>& out, const std::vector<std::pair<std::string, BoundKind>>& names,
             const std::function<std::vector<BoundRecord>()>& fn) {
    try {
        for (auto& r : fn()) out.push_back(std::move(r));
    } catch (const Error& e) {
        for (const auto& [name, kind] : names) out.push_back(not_applicable(name, kind, e.what()));
    }
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b)});
    if (scale <= 1e-14) return 0.0;
    return std::abs(a - b) / scale;
}

void reference_dw(Radii& R, const CMatrix& t, std::uint64_t seed, const VerifyOptions& opts, VerificationReport& rep) {
    const Metric& m = R.metric();
    DwOptions dopts;
    dopts.seed = seed;
    rep.dw_multistart = compressed::dw_radius(R.comp(t), dopts);
    if (rep.dw_multistart.maximizer.size() > 0) rep.dw_multistart.witness = m.ambient(rep.dw_multistart.maximizer);
    rep.dw = rep.dw_multistart.value;
    if (opts.oracle_samples > 0 && m.rank() <= kOracleMaxRank) {
        rep.oracle_used = true;
        rep.dw_oracle = compressed::oracle(R.comp(t), Objective::dw, opts.oracle_samples, Rng::mix(seed)).value;
        rep.oracle_rel_diff = rel_diff(rep.dw_multistart.value, rep.dw_oracle);
        rep.oracle_agrees = rep.oracle_rel_diff <= opts.oracle_agreement;
        rep.dw = std::max(rep.dw, rep.dw_oracle);
    }
    rep.tol = tol_verify(rep.dw);
}

void pair_records(Radii& R, const CMatrix& x, const CMatrix& y, VerificationReport& rep) {
    const Metric& m = R.metric();
    auto& out = rep.records;
    const CMatrix id = identity_like(x);
    attempt(out, {{"sum_upper", BoundKind::upper}, {"sum_upper_special", BoundKind::upper}}, [&] {
        auto [r, special] = sum_upper_impl(R, x, y);
        std::vector<BoundRecord> v{r};
        v.push_back(special ? *special
                            : not_applicable("sum_upper_special", BoundKind::upper, "A(X^# Y + Y^# X) is not zero"));
        return v;
    });
    attempt(out, {{"feki_sum_upper", BoundKind::upper}}, [&] { return std::vector<BoundRecord>{feki_impl(R, x, y)}; });
    attempt(out, {{"product_sum_upper", BoundKind::upper}},
            [&] { return std::vector<BoundRecord>{product_sum_impl(R, id, id, x, y, 1.0)}; });
    attempt(out, {{"product_sum_upper_b", BoundKind::upper}},
            [&] { return std::vector<BoundRecord>{product_sum_b_impl(R, id, id, x, y)}; });
    attempt(out, {{"product_sum_upper_c", BoundKind::upper}},
            [&] { return std::vector<BoundRecord>{product_sum_c_impl(R, id, id, x, y)}; });
    for (auto& r : out) grade(r, rep.dw, rep.tol);

    // The off-diagonal block lives on H ⊕ H and has its own reference value.
    std::vector<BoundRecord> block;
    attempt(block, {{"offdiag_upper", BoundKind::upper}}, [&] {
        BoundRecord r = offdiag_impl(R, x, y);
        const BlockOperator b = block2(m, CMatrix::Zero(x.rows(), x.cols()), x, y, CMatrix::Zero(x.rows(), x.cols()));
        const double dw = compressed::dw_radius(compress(b.metric2, b.assembled)).value;
        grade(r, dw, tol_verify(dw));
        return std::vector<BoundRecord>{r};
    });
    for (auto& r : block) out.push_back(std::move(r));
}

void finalize(VerificationReport& rep) {
    rep.pass = std::all_of(rep.records.begin(), rep.records.end(),
                           [](const BoundRecord& r) { return !r.applicable || r.satisfied; });
}

} // namespace

// --- public wrappers ---------------------------------------------------------

std::pair<BoundRecord, BoundRecord> sandwich(const Metric& m, const CMatrix& t) {
    Radii R(m);
    return sandwich_impl(R, t);
}

std::array<BoundRecord, 4> lower_crawford(const Metric& m, const CMatrix& t) {
    Radii R(m);
    return lower_crawford_impl(R, t);
}

BoundRecord upper_theta_sweep(const Metric& m, const CMatrix& t, const ThetaSweepOptions& opts) {
    Radii R(m);
    return upper_theta_sweep_impl(R, t, opts);
}

std::pair<BoundRecord, BoundRecord> cartesian_half(const Metric& m, const CMatrix& t) {
    Radii R(m);
    return cartesian_half_impl(R, t);
}

std::pair<BoundRecord, BoundRecord> upper_buzano(const Metric& m, const CMatrix& t) {
    Radii R(m);
    return upper_buzano_impl(R, t);
}

BoundRecord upper_triple(const Metric& m, const CMatrix& t) {
    Radii R(m);
    return upper_triple_impl(R, t);
}

std::pair<BoundRecord, BoundRecord> upper_lambda_theta(const Metric& m, const CMatrix& t, const LambdaThetaOptions& opts) {
    Radii R(m);
    return upper_lambda_theta_impl(R, t, opts);
}

std::pair<BoundRecord, BoundRecord> upper_lambda_complex(const Metric& m, const CMatrix& t,
                                                         const LambdaComplexOptions& opts) {
    Radii R(m);
    return upper_lambda_complex_impl(R, t, opts);
}

std::pair<BoundRecord, std::optional<BoundRecord>> sum_upper(const Metric& m, const CMatrix& x, const CMatrix& y) {
    Radii R(m);
    return sum_upper_impl(R, x, y);
}

BoundRecord feki_sum_upper(const Metric& m, const CMatrix& x, const CMatrix& y) {
    Radii R(m);
    return feki_impl(R, x, y);
}

BoundRecord offdiag_upper(const Metric& m, const CMatrix& x, const CMatrix& y) {
    Radii R(m);
    return offdiag_impl(R, x, y);
}

double offdiag_alpha(const Metric& m, const CMatrix& x, const CMatrix& y) {
    const CMatrix zero = CMatrix::Zero(x.rows(), x.cols());
    const BlockOperator b = block2(m, zero, x, y, zero);
    return compressed::numerical_radius(compress(b.metric2, b.assembled).n).value;
}

CMatrix product_sum_target(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x, const CMatrix& y,
                           int sign) {
    const double sg = sign < 0 ? -1.0 : 1.0;
    return p * x * sharp(m, q) + sg * (q * y * sharp(m, p));
}

BoundRecord product_sum_upper(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x, const CMatrix& y,
                              double t, int sign) {
    Radii R(m);
    BoundRecord r = product_sum_impl(R, p, q, x, y, t);
    r.params.emplace_back("sign", sign < 0 ? -1.0 : 1.0);
    return r;
}

BoundRecord product_sum_upper_b(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x,
                                const CMatrix& y, int sign) {
    Radii R(m);
    BoundRecord r = product_sum_b_impl(R, p, q, x, y);
    r.params.emplace_back("sign", sign < 0 ? -1.0 : 1.0);
    return r;
}

BoundRecord product_sum_upper_c(const Metric& m, const CMatrix& p, const CMatrix& q, const CMatrix& x,
                                const CMatrix& y, int sign) {
    Radii R(m);
    BoundRecord r = product_sum_c_impl(R, p, q, x, y);
    r.params.emplace_back("sign", sign < 0 ? -1.0 : 1.0);
    return r;
}

Diagnostic normaloid_equality_check(const Metric& m, const CMatrix& t, double tol) {
    Radii R(m);
    return normaloid_impl(R, t, tol);
}

Diagnostic zero_equality_check(const Metric& m, const CMatrix& t, double tol) {
    Radii R(m);
    return zero_impl(R, t, tol);
}

Diagnostic norm_sq_equality_check(const Metric& m, const CMatrix& t, double tol) {
    Radii R(m);
    return norm_sq_impl(R, t, tol);
}

VerificationReport verify_all(const Metric& m, const CMatrix& t, std::uint64_t seed, const VerifyOptions& opts) {
    require_operator(m, t, "T");
    if (!is_a_bounded(m, t)) throw Error(Errc::not_a_bounded, "operator is not A-bounded");
    Radii R(m);
    VerificationReport rep;
    rep.dim = m.dim();
    rep.rank = m.rank();
    rep.metric_hash = matrix_hash(m.a());
    rep.operator_hash = matrix_hash(t);
    rep.seed = seed;
    reference_dw(R, t, seed, opts, rep);

    auto& out = rep.records;
    attempt(out, {{"sandwich_lower", BoundKind::lower}, {"sandwich_upper", BoundKind::upper}}, [&] {
        auto [lo, up] = sandwich_impl(R, t);
        return std::vector<BoundRecord>{lo, up};
    });
    attempt(out,
            {{"lower_crawford_w_cs", BoundKind::lower},
             {"lower_crawford_norm_ct", BoundKind::lower},
             {"lower_crawford_2w_cs", BoundKind::lower},
             {"lower_crawford_2c_norm", BoundKind::lower}},
            [&] {
                auto a = lower_crawford_impl(R, t);
                return std::vector<BoundRecord>(a.begin(), a.end());
            });
    attempt(out, {{"upper_theta_sweep", BoundKind::upper}},
            [&] { return std::vector<BoundRecord>{upper_theta_sweep_impl(R, t, opts.theta)}; });
    attempt(out, {{"cartesian_half_lower", BoundKind::lower}, {"cartesian_half_upper", BoundKind::upper}}, [&] {
        auto [lo, up] = cartesian_half_impl(R, t);
        return std::vector<BoundRecord>{lo, up};
    });
    attempt(out, {{"upper_buzano_i", BoundKind::upper}, {"upper_buzano_ii", BoundKind::upper}}, [&] {
        auto [i, ii] = upper_buzano_impl(R, t);
        return std::vector<BoundRecord>{i, ii};
    });
    attempt(out, {{"upper_triple", BoundKind::upper}}, [&] { return std::vector<BoundRecord>{upper_triple_impl(R, t)}; });
    attempt(out, {{"upper_lambda_theta", BoundKind::upper}, {"upper_lambda_theta_zero", BoundKind::upper}}, [&] {
        auto [g, z] = upper_lambda_theta_impl(R, t, opts.lambda_theta);
        return std::vector<BoundRecord>{g, z};
    });
    attempt(out, {{"upper_lambda_complex", BoundKind::upper}, {"upper_lambda_complex_zero", BoundKind::upper}}, [&] {
        auto [g, z] = upper_lambda_complex_impl(R, t, opts.lambda_complex);
        return std::vector<BoundRecord>{g, z};
    });
    for (auto& r : out) grade(r, rep.dw, rep.tol);

    // Pair bounds on the Cartesian split T = Re_A(T) + i·Im_A(T).
    std::vector<BoundRecord> pair;
    try {
        const CMatrix x = re_a(m, t);
        const CMatrix y = kI * im_a(m, t);
        VerificationReport sub = rep;
        sub.records.clear();
        pair_records(R, x, y, sub);
        pair = std::move(sub.records);
    } catch (const Error& e) {
        for (const char* name : {"sum_upper", "sum_upper_special", "feki_sum_upper", "product_sum_upper",
                                 "product_sum_upper_b", "product_sum_upper_c", "offdiag_upper"})
            pair.push_back(not_applicable(name, BoundKind::upper, e.what()));
    }
    for (auto& r : pair) {
        r.note = r.note.empty() ? "X = Re_A(T), Y = i Im_A(T)" : r.note;
        out.push_back(std::move(r));
    }

    rep.diagnostics.push_back(normaloid_impl(R, t, 1e-6));
    rep.diagnostics.push_back(zero_impl(R, t, 1e-6));
    rep.diagnostics.push_back(norm_sq_impl(R, t, 1e-6));
    finalize(rep);
    return rep;
}

VerificationReport verify_pair(const Metric& m, const CMatrix& x, const CMatrix& y, std::uint64_t seed,
                               const VerifyOptions& opts) {
    require_operator(m, x, "X");
    require_operator(m, y, "Y");
    const CMatrix t = x + y;
    if (!is_a_bounded(m, t)) throw Error(Errc::not_a_bounded, "X + Y is not A-bounded");
    Radii R(m);
    VerificationReport rep;
    rep.dim = m.dim();
    rep.rank = m.rank();
    rep.metric_hash = matrix_hash(m.a());
    rep.operator_hash = matrix_hash(t);
    rep.seed = seed;
    reference_dw(R, t, seed, opts, rep);
    pair_records(R, x, y, rep);
    finalize(rep);
    return rep;
}

} // namespace semihilbert
