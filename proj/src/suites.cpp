#include "semihilbert/suites.hpp"

#include "semihilbert/error.hpp"
#include "semihilbert/instances.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>

namespace semihilbert {

const Check* SuiteResult::find(const std::string& check) const {
    for (const auto& c : checks)
        if (c.name == check) return &c;
    return nullptr;
}

std::vector<std::string> suite_names() { return {"inequalities", "exact", "cardano", "invariance", "equality"}; }

namespace {

constexpr double kSharpTol = 1e-10;
constexpr double kOracleRel = 1e-4;

std::uint64_t suite_tag(const std::string& suite) {
    std::uint64_t h = 0;
    for (char c : suite) h = Rng::mix(h ^ static_cast<unsigned char>(c));
    return h;
}

Rng case_rng(const SuiteConfig& cfg, const std::string& suite, int index) {
    return Rng(cfg.seed ^ suite_tag(suite)).split(static_cast<std::uint64_t>(index));
}

std::uint64_t case_seed(const SuiteConfig& cfg, const std::string& suite, int index) {
    return Rng::mix(Rng::mix(cfg.seed ^ suite_tag(suite)) + static_cast<std::uint64_t>(index));
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale <= 1e-14 ? 0.0 : std::abs(a - b) / scale;
}

Json check(bool ok, double measure) { return Json{{"ok", ok}, {"measure", measure}}; }

// ‖A·T^♯ − T*·A‖_F / (1 + ‖A‖_F‖T‖_F); the criterion is measure ≤ 1e-10.
Json sharp_identity_check(const Metric& m, const CMatrix& t) {
    const double res = (m.a() * sharp(m, t) - t.adjoint() * m.a()).norm();
    const double measure = res / (1.0 + m.a().norm() * t.norm());
    return check(measure <= kSharpTol, measure);
}

Json oracle_check(double multistart, double oracle) {
    const double d = rel_diff(multistart, oracle);
    return check(d <= kOracleRel, d);
}

Eigen::Index random_zeros(Rng& rng, Eigen::Index n, bool deficient) {
    return deficient ? static_cast<Eigen::Index>(rng.uniform_int(1, static_cast<int>(n) - 1)) : 0;
}

// --- inequality suite ----------------------------------------------------------

std::vector<Json> gen_inequalities(const SuiteConfig& cfg) {
    const int count = cfg.count > 0 ? cfg.count : 200;
    std::vector<Json> out;
    for (int i = 0; i < count; ++i) {
        Rng rng = case_rng(cfg, "inequalities", i);
        const Eigen::Index n = 2 + i % 3;
        const CMatrix a = random_psd(rng, n, random_zeros(rng, n, i % 4 == 3));
        const Metric m = build_metric(a);
        const CMatrix t = random_a_bounded(rng, m);
        out.push_back(Json{{"kind", "random"}, {"seed", case_seed(cfg, "inequalities", i)}, {"samples", cfg.samples},
                           {"a", matrix_to_json(a)}, {"t", matrix_to_json(t)}});
    }
    return out;
}

const BoundRecord* find_record(const VerificationReport& rep, const std::string& name) {
    for (const auto& r : rep.records)
        if (r.name == name) return &r;
    return nullptr;
}

double param(const BoundRecord& r, const std::string& key) {
    for (const auto& [k, v] : r.params)
        if (k == key) return v;
    return std::numeric_limits<double>::quiet_NaN();
}

Json eval_inequality(const Json& c) {
    const Metric m = build_metric(matrix_from_json(c.at("a")));
    const CMatrix t = matrix_from_json(c.at("t"));
    VerifyOptions opts;
    opts.oracle_samples = c.at("samples").get<int>();
    const VerificationReport rep = verify_all(m, t, c.at("seed").get<std::uint64_t>(), opts);

    Json failing = Json::array();
    double worst = 0.0;
    int applicable = 0;
    for (const auto& r : rep.records) {
        if (!r.applicable) continue;
        ++applicable;
        const double tol = tol_verify(r.reference_dw);
        worst = std::max(worst, -r.gap / tol);
        if (!r.satisfied) failing.push_back(record_to_json(r));
    }
    Json checks;
    checks["bounds"] = check(rep.pass, worst);
    checks["bounds"]["applicable"] = applicable;
    checks["bounds"]["failing"] = failing;

    const BoundRecord* sw = find_record(rep, "sandwich_lower");
    const BoundRecord* la = find_record(rep, "lower_crawford_w_cs");
    const BoundRecord* lb = find_record(rep, "lower_crawford_norm_ct");
    if (sw && la && lb && la->applicable && lb->applicable) {
        const double w = param(*sw, "w");
        const double n = param(*sw, "norm");
        const double d = std::max(w - la->value, n * n - lb->value);
        checks["dominance"] = check(d <= rep.tol, d / rep.tol);
    } else {
        checks["dominance"] = check(false, 0.0);
    }
    if (rep.oracle_used) checks["oracle_agreement"] = oracle_check(rep.dw_multistart.value, rep.dw_oracle);
    checks["sharp_identity"] = sharp_identity_check(m, t);
    bool consistent = true;
    for (const auto& d : rep.diagnostics) consistent = consistent && d.consistent;
    checks["equality_diagnostics"] = check(consistent, 0.0);
    return Json{{"dw", rep.dw}, {"checks", checks}};
}

// --- exact-formula suite -------------------------------------------------------

std::vector<Json> gen_exact(const SuiteConfig& cfg) {
    const int per = cfg.count > 0 ? cfg.count : 50;
    std::vector<Json> out;
    const double boundary = std::numbers::sqrt2 / 2.0;
    for (int kind = 0; kind < 2; ++kind) {
        for (int i = 0; i < per; ++i) {
            const int idx = kind * per + i;
            Rng rng = case_rng(cfg, "exact", idx);
            const Eigen::Index n = 2 + i % 2;
            const CMatrix a = random_psd(rng, n, random_zeros(rng, n, i % 3 == 2));
            const Metric m = build_metric(a);
            double b = 0.0;
            switch (i % 5) {
            case 0: b = i % 10 == 0 ? 0.0 : rng.uniform(0.01, 0.2); break;
            case 1: b = rng.uniform(0.2, boundary - 1e-3); break;
            case 2: b = boundary; break;
            case 3: b = rng.uniform(boundary + 1e-3, 1.5); break;
            default: b = rng.uniform(1.5, 5.0); break;
            }
            const CMatrix x = random_with_seminorm(rng, m, b);
            out.push_back(Json{{"kind", kind == 0 ? "ix" : "0x"}, {"seed", case_seed(cfg, "exact", idx)},
                               {"samples", cfg.samples}, {"b_target", b}, {"a", matrix_to_json(a)},
                               {"x", matrix_to_json(x)}});
        }
    }
    return out;
}

Json eval_exact(const Json& c) {
    const Metric m = build_metric(matrix_from_json(c.at("a")));
    const CMatrix x = matrix_from_json(c.at("x"));
    const bool ix = c.at("kind").get<std::string>() == "ix";
    const std::uint64_t seed = c.at("seed").get<std::uint64_t>();
    const RadiusEstimate est = ix ? dw_exact_ix(m, x) : dw_exact_0x(m, x);

    const Eigen::Index n = m.dim();
    const CMatrix zero = CMatrix::Zero(n, n);
    const CMatrix first = ix ? CMatrix(CMatrix::Identity(n, n)) : zero;
    const BlockOperator blk = block2(m, first, x, zero, zero);
    const RadiusEstimate oracle =
        oracle_extremum(blk.metric2, blk.assembled, Objective::dw, c.at("samples").get<int>(), seed);
    DwOptions dopts;
    dopts.seed = seed;
    const RadiusEstimate ms = dw_radius(blk.metric2, blk.assembled, dopts);

    // Attainment at the closed-form witness, evaluated from the definition.
    const CVector tz = blk.assembled * est.witness;
    const double q = std::abs(semi_inner(blk.metric2, tz, est.witness));
    const double s = std::pow(semi_norm(blk.metric2, tz), 2);
    const double unit = semi_norm(blk.metric2, est.witness);
    const double attained = std::sqrt(q * q + s * s);
    const double expected_unit = m.rank() > 0 ? 1.0 : 0.0;

    Json checks;
    checks["closed_form_vs_oracle"] = check(rel_diff(est.value, oracle.value) <= 1e-3, rel_diff(est.value, oracle.value));
    const double wit = std::max(std::abs(attained - est.value), std::abs(unit - expected_unit));
    checks["witness"] = check(wit <= 1e-8 * (1.0 + est.value), wit);
    checks["grid_agreement"] = check(!est.warning, est.residual);
    checks["oracle_agreement"] = oracle_check(ms.value, oracle.value);
    checks["sharp_identity"] = sharp_identity_check(m, x);
    return Json{{"closed_form", est.value}, {"oracle", oracle.value}, {"multistart", ms.value},
                {"b", op_seminorm(m, x).value}, {"checks", checks}};
}

// --- Cardano suite -------------------------------------------------------------

std::vector<Json> gen_cardano(const SuiteConfig& cfg) {
    const int count = cfg.count > 0 ? cfg.count : 100;
    std::vector<Json> out;
    for (int k = 1; k <= count; ++k) out.push_back(Json{{"kind", "cardano"}, {"b", 5.0 * k / count}});
    return out;
}

Json eval_cardano(const Json& c) {
    const double b = c.at("b").get<double>();
    const CardanoData d = cardano_theta0(b);
    const double f0 = phi(d.theta0, b);
    constexpr double h = 1e-6;
    const double deriv = (phi(d.theta0 + h, b) - phi(d.theta0 - h, b)) / (2.0 * h);
    constexpr int kGrid = 10000;
    double grid = -1.0;
    for (int i = 0; i < kGrid; ++i) grid = std::max(grid, phi(std::numbers::pi / 2.0 * i / (kGrid - 1), b));
    Json checks;
    checks["stationarity"] = check(std::abs(deriv) <= 1e-6 * (1.0 + f0), std::abs(deriv) / (1.0 + f0));
    checks["grid_match"] = check(rel_diff(f0, grid) <= 1e-6, rel_diff(f0, grid));
    checks["theta_range"] = check(d.theta0 >= 0.0 && d.theta0 <= std::numbers::pi / 2.0, d.theta0);
    return Json{{"theta0", d.theta0}, {"phi", f0}, {"grid_max", grid}, {"checks", checks}};
}

// --- invariance suite ----------------------------------------------------------

std::vector<Json> gen_invariance(const SuiteConfig& cfg) {
    const int count = cfg.count > 0 ? cfg.count : 50;
    std::vector<Json> out;
    for (int i = 0; i < 2 * count; ++i) {
        Rng rng = case_rng(cfg, "invariance", i);
        const bool block = i >= count;
        const Eigen::Index n = block ? 2 + i % 2 : 2 + i % 3;
        const CMatrix a = random_psd(rng, n, random_zeros(rng, n, i % 4 == 3));
        const Metric m = build_metric(a);
        Json c{{"seed", case_seed(cfg, "invariance", i)}, {"samples", cfg.samples}, {"a", matrix_to_json(a)}};
        if (!block) {
            c["kind"] = "unitary";
            c["t"] = matrix_to_json(random_a_bounded(rng, m));
            c["u"] = matrix_to_json(random_a_unitary(rng, m));
        } else {
            c["kind"] = "block";
            c["x"] = matrix_to_json(random_a_bounded(rng, m));
            c["y"] = matrix_to_json(random_a_bounded(rng, m));
            c["theta"] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        out.push_back(std::move(c));
    }
    return out;
}

Json eval_invariance(const Json& c) {
    const Metric m = build_metric(matrix_from_json(c.at("a")));
    DwOptions dopts;
    dopts.seed = c.at("seed").get<std::uint64_t>();
    Json checks;
    Json out;
    if (c.at("kind").get<std::string>() == "unitary") {
        const CMatrix t = matrix_from_json(c.at("t"));
        const CMatrix u = matrix_from_json(c.at("u"));
        const double base = dw_radius(m, t, dopts).value;
        const double moved = dw_radius(m, sharp(m, u) * t * u, dopts).value;
        const double diff = std::abs(moved - base);
        checks["unitary_invariance"] = check(diff <= 1e-6 * (1.0 + base), diff / (1.0 + base));
        checks["a_unitary"] = check(is_a_unitary(m, u), unitary_residual(m, u));
        if (m.rank() <= kOracleMaxRank) {
            const double oracle =
                oracle_extremum(m, t, Objective::dw, c.at("samples").get<int>(), dopts.seed).value;
            checks["oracle_agreement"] = oracle_check(base, oracle);
            out["oracle"] = oracle;
        }
        checks["sharp_identity"] = sharp_identity_check(m, t);
        out["dw"] = base;
        out["dw_conjugated"] = moved;
    } else {
        const CMatrix x = matrix_from_json(c.at("x"));
        const CMatrix y = matrix_from_json(c.at("y"));
        const Complex phase = std::polar(1.0, c.at("theta").get<double>());
        const CMatrix zero = CMatrix::Zero(m.dim(), m.dim());
        auto dw_block = [&](const CMatrix& b12, const CMatrix& b21) {
            const BlockOperator b = block2(m, zero, b12, b21, zero);
            return dw_radius(b.metric2, b.assembled, dopts).value;
        };
        const double base = dw_block(x, y);
        const double phased = dw_block(x, phase * y);
        const double swapped = dw_block(y, x);
        const double dp = std::abs(phased - base);
        const double ds = std::abs(swapped - base);
        checks["phase_invariance"] = check(dp <= 1e-6 * (1.0 + base), dp / (1.0 + base));
        checks["swap_invariance"] = check(ds <= 1e-6 * (1.0 + base), ds / (1.0 + base));
        const BlockOperator b = block2(m, zero, x, y, zero);
        if (b.metric2.rank() <= kOracleMaxRank) {
            const double oracle =
                oracle_extremum(b.metric2, b.assembled, Objective::dw, c.at("samples").get<int>(), dopts.seed).value;
            checks["oracle_agreement"] = oracle_check(base, oracle);
            out["oracle"] = oracle;
        }
        checks["sharp_identity"] = sharp_identity_check(m, x);
        out["dw"] = base;
        out["dw_phased"] = phased;
        out["dw_swapped"] = swapped;
    }
    out["checks"] = checks;
    return out;
}

// --- equality suite ------------------------------------------------------------

std::vector<Json> gen_equality(const SuiteConfig& cfg) {
    const int count = cfg.count > 0 ? cfg.count : 50;
    const int nil = cfg.count > 0 ? std::max(1, cfg.count * 2 / 5) : 20;
    std::vector<Json> out;
    int idx = 0;
    auto base = [&](Rng& rng, Eigen::Index n, Eigen::Index zeros, const char* kind) {
        const CMatrix a = random_psd(rng, n, zeros);
        return std::pair{a, Json{{"kind", kind}, {"seed", case_seed(cfg, "equality", idx)}, {"samples", cfg.samples},
                                 {"a", matrix_to_json(a)}}};
    };
    for (int i = 0; i < count; ++i, ++idx) {
        Rng rng = case_rng(cfg, "equality", idx);
        const Eigen::Index n = 2 + i % 3;
        auto [a, c] = base(rng, n, random_zeros(rng, n, i % 3 == 2), "selfadjoint");
        c["t"] = matrix_to_json(random_a_selfadjoint(rng, build_metric(a)));
        out.push_back(std::move(c));
    }
    for (int i = 0; i < count; ++i, ++idx) {
        Rng rng = case_rng(cfg, "equality", idx);
        const Eigen::Index n = 2 + i % 3;
        auto [a, c] = base(rng, n, random_zeros(rng, n, true), "null");
        c["t"] = matrix_to_json(random_a_null(rng, build_metric(a)));
        out.push_back(std::move(c));
    }
    for (int i = 0; i < nil; ++i, ++idx) {
        Rng rng = case_rng(cfg, "equality", idx);
        const Eigen::Index n = 2 + i % 3;
        // keep rank ≥ 2 so a nilpotent compression exists
        const Eigen::Index zeros = n > 2 && i % 2 == 1 ? 1 : 0;
        auto [a, c] = base(rng, n, zeros, "nilpotent");
        const double beta = rng.uniform(std::numbers::sqrt2 / 2.0 + 0.05, 2.5);
        c["beta"] = beta;
        c["t"] = matrix_to_json(random_nilpotent_type(rng, build_metric(a), beta));
        out.push_back(std::move(c));
    }
    return out;
}

Json eval_equality(const Json& c) {
    const Metric m = build_metric(matrix_from_json(c.at("a")));
    const CMatrix t = matrix_from_json(c.at("t"));
    const std::string kind = c.at("kind").get<std::string>();
    DwOptions dopts;
    dopts.seed = c.at("seed").get<std::uint64_t>();
    const double dw = dw_radius(m, t, dopts).value;
    const double w = numerical_radius(m, t).value;
    const double n = op_seminorm(m, t).value;
    Json checks;
    if (kind == "selfadjoint") {
        const double upper = std::sqrt(w * w + n * n * n * n);
        checks["normaloid_equality"] = check(rel_diff(dw, upper) <= 1e-6, rel_diff(dw, upper));
        checks["a_selfadjoint"] = check(is_a_selfadjoint(m, t, 1e-9 * (1.0 + m.a().norm() * t.norm())),
                                        selfadjoint_residual(m, t));
        const Diagnostic d = normaloid_equality_check(m, t);
        checks["diagnostic"] = check(d.consistent && d.condition_a && d.condition_b, d.residual_b);
    } else if (kind == "null") {
        const double worst = std::max(dw, w);
        checks["zero_equality"] = check(worst <= 1e-10, worst);
        const Diagnostic d = zero_equality_check(m, t);
        checks["diagnostic"] = check(d.consistent && d.condition_a && d.condition_b, d.residual_a);
    } else {
        const Diagnostic d = norm_sq_equality_check(m, t);
        checks["dw_equals_norm_sq"] = check(d.condition_a, d.residual_a);
        checks["witness_form_vanishes"] = check(d.applicable && d.residual_b <= 1e-8, d.residual_b);
    }
    Json out{{"dw", dw}, {"w", w}, {"norm", n}};
    if (m.rank() <= kOracleMaxRank) {
        const double oracle = oracle_extremum(m, t, Objective::dw, c.at("samples").get<int>(), dopts.seed).value;
        checks["oracle_agreement"] = oracle_check(dw, oracle);
        out["oracle"] = oracle;
    }
    checks["sharp_identity"] = sharp_identity_check(m, t);
    out["checks"] = checks;
    return out;
}

} // namespace

std::vector<Json> generate_cases(const std::string& suite, const SuiteConfig& cfg) {
    if (suite == "inequalities") return gen_inequalities(cfg);
    if (suite == "exact") return gen_exact(cfg);
    if (suite == "cardano") return gen_cardano(cfg);
    if (suite == "invariance") return gen_invariance(cfg);
    if (suite == "equality") return gen_equality(cfg);
    throw Error(Errc::parse_error, "unknown suite '" + suite + "'");
}

Json evaluate_case(const std::string& suite, const Json& instance) {
    try {
        if (suite == "inequalities") return eval_inequality(instance);
        if (suite == "exact") return eval_exact(instance);
        if (suite == "cardano") return eval_cardano(instance);
        if (suite == "invariance") return eval_invariance(instance);
        if (suite == "equality") return eval_equality(instance);
    } catch (const Json::exception& e) {
        throw Error(Errc::parse_error, std::string("malformed case: ") + e.what());
    }
    throw Error(Errc::parse_error, "unknown suite '" + suite + "'");
}

SuiteResult run_suite(const std::string& suite, const SuiteConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = suite;
    const std::vector<Json> cases = generate_cases(suite, cfg);
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        Json outcome;
        try {
            outcome = evaluate_case(suite, cases[i]);
        } catch (const Error& e) {
            outcome = Json{{"checks", {{"evaluation", {{"ok", false}, {"measure", 0.0}, {"error", e.what()}}}}}};
        }
        ++res.instances;
        for (const auto& [name, result] : outcome.at("checks").items()) {
            if (!slot.count(name)) {
                slot[name] = res.checks.size();
                res.checks.push_back(Check{name});
            }
            Check& ck = res.checks[slot[name]];
            ++ck.total;
            const double measure = result.value("measure", 0.0);
            ck.worst = std::max(ck.worst, std::isfinite(measure) ? measure : 0.0);
            if (result.at("ok").get<bool>()) {
                ++ck.passed;
            } else {
                res.violations.push_back(Violation{suite, name, static_cast<int>(i), cases[i], outcome});
            }
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

Json violation_to_json(const Violation& v) {
    return Json{{"suite", v.suite}, {"check", v.check}, {"index", v.index}, {"instance", v.instance}, {"outcome", v.outcome}};
}

Json suite_result_to_json(const SuiteResult& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"total", c.total}, {"worst", c.worst}});
    Json viol = Json::array();
    for (const auto& v : r.violations) viol.push_back(violation_to_json(v));
    return Json{{"suite", r.name}, {"instances", r.instances}, {"pass", r.pass()}, {"checks", checks}, {"violations", viol}};
}

Json replay_violation(const Json& violation) {
    try {
        return evaluate_case(violation.at("suite").get<std::string>(), violation.at("instance"));
    } catch (const Json::exception& e) {
        throw Error(Errc::parse_error, std::string("malformed violation: ") + e.what());
    }
}

} // namespace semihilbert
