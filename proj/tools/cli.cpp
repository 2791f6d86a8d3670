#include "cli.hpp"

#include "semihilbert/bounds.hpp"
#include "semihilbert/error.hpp"
#include "semihilbert/exact.hpp"
#include "semihilbert/metric.hpp"
#include "semihilbert/radii.hpp"
#include "semihilbert/semiop.hpp"
#include "semihilbert/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace semihilbert::cli {

namespace {

struct RunConfig {
    std::string metric;
    std::string op;
    std::string op2;
    std::string replay;
    std::string suite = "all";
    std::string kind = "both";
    std::uint64_t seed = 42;
    int samples = 200000;
    int count = 0;
    std::optional<double> tol;
    std::string format = "json";
    std::string out;
};

/// Report body in the selected format; JSON is dumped with full precision.
struct Output {
    Json json;
    std::string csv;
    std::string text;
};

std::string render(const Output& o, const std::string& format) {
    if (format == "csv") return o.csv;
    if (format == "text") return o.text;
    return o.json.dump(2) + "\n";
}

std::string vector_text(const CVector& v) {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << format_sig(v(i).real());
        if (v(i).imag() != 0.0) os << (v(i).imag() < 0 ? "-" : "+") << format_sig(std::abs(v(i).imag())) << "i";
    }
    os << "]";
    return os.str();
}

Metric load_metric(const RunConfig& cfg) { return build_metric(load_matrix(cfg.metric)); }

/// Regrades every graded record at a user tolerance.
void apply_tol(VerificationReport& rep, double tol) {
    rep.tol = tol;
    rep.pass = true;
    for (auto& r : rep.records) {
        if (!r.applicable || !r.graded) continue;
        grade(r, r.reference_dw, tol);
        rep.pass = rep.pass && r.satisfied;
    }
}

VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions opts;
    opts.oracle_samples = cfg.samples;
    return opts;
}

std::string records_text(const VerificationReport& rep) {
    std::ostringstream os;
    os << "dim " << rep.dim << "  rank " << rep.rank << "  dw " << format_sig(rep.dw) << "  tol "
       << format_sig(rep.tol) << "\n";
    if (rep.oracle_used)
        os << "oracle " << format_sig(rep.dw_oracle) << "  rel diff " << format_sig(rep.oracle_rel_diff)
           << (rep.oracle_agrees ? "  agrees\n" : "  DISAGREES\n");
    for (const auto& r : rep.records) {
        os << std::left << std::setw(28) << r.name << std::setw(6) << to_string(r.kind);
        if (!r.applicable) {
            os << "n/a   " << r.note << "\n";
            continue;
        }
        os << std::setw(14) << format_sig(r.value) << "gap " << std::setw(14) << format_sig(r.gap)
           << (r.satisfied ? "ok" : "VIOLATED") << "\n";
    }
    return os.str();
}

std::string diagnostics_text(const VerificationReport& rep) {
    std::ostringstream os;
    for (const auto& d : rep.diagnostics) {
        os << std::left << std::setw(28) << d.name;
        if (!d.applicable) {
            os << "n/a   " << d.note << "\n";
            continue;
        }
        os << "a=" << d.condition_a << " b=" << d.condition_b << "  residuals " << format_sig(d.residual_a) << ", "
           << format_sig(d.residual_b) << (d.consistent ? "  consistent" : "  INCONSISTENT") << "\n";
    }
    return os.str();
}

int cmd_compute(const RunConfig& cfg, Output& o) {
    const Metric m = load_metric(cfg);
    const CMatrix t = load_matrix(cfg.op);
    require_operator(m, t);
    const double residual = a_bounded_residual(m, t);
    if (residual > kMembershipTol) {
        std::ostringstream os;
        os << "operator is not A-bounded (relative residual " << format_full(residual) << ")";
        throw Error(Errc::not_a_bounded, os.str());
    }
    const std::vector<std::pair<std::string, RadiusEstimate>> q = {
        {"norm", op_seminorm(m, t)},        {"min_modulus", min_modulus(m, t)},
        {"numerical_radius", numerical_radius(m, t)}, {"crawford", crawford(m, t)},
        {"dw", dw_radius(m, t)},
    };
    std::optional<RadiusEstimate> oracle;
    if (cfg.samples > 0 && m.rank() <= kOracleMaxRank)
        oracle = oracle_extremum(m, t, Objective::dw, cfg.samples, cfg.seed);

    o.json = Json{{"command", "compute"}, {"dim", m.dim()}, {"rank", m.rank()},
                  {"metric_hash", matrix_hash(m.a())}, {"operator_hash", matrix_hash(t)},
                  {"seed", cfg.seed}, {"samples", cfg.samples}, {"a_bounded_residual", residual}};
    Json qj;
    for (const auto& [name, e] : q) qj[name] = estimate_to_json(e);
    o.json["quantities"] = qj;
    o.json["dw_oracle"] = oracle ? estimate_to_json(*oracle) : Json(nullptr);

    std::ostringstream csv, text;
    csv << "quantity,value,method,iterations,residual\n";
    text << "dim " << m.dim() << "  rank " << m.rank() << "\n";
    auto row = [&](const std::string& name, const RadiusEstimate& e) {
        csv << name << "," << format_full(e.value) << "," << to_string(e.method) << "," << e.iterations << ","
            << format_full(e.residual) << "\n";
        text << std::left << std::setw(18) << name << std::setw(14) << format_sig(e.value) << std::setw(13)
             << to_string(e.method) << "witness " << vector_text(e.witness) << "\n";
        if (e.warning) text << "  warning: estimate did not meet its convergence check\n";
    };
    for (const auto& [name, e] : q) row(name, e);
    if (oracle) row("dw_oracle", *oracle);
    o.csv = csv.str();
    o.text = text.str();
    return kExitOk;
}

int cmd_bounds(const RunConfig& cfg, Output& o, bool full) {
    const Metric m = load_metric(cfg);
    const CMatrix t = load_matrix(cfg.op);
    VerificationReport rep;
    if (!full && !cfg.op2.empty()) {
        rep = verify_pair(m, t, load_matrix(cfg.op2), cfg.seed, verify_options(cfg));
    } else {
        rep = verify_all(m, t, cfg.seed, verify_options(cfg));
    }
    if (cfg.tol) apply_tol(rep, *cfg.tol);

    bool ok = rep.pass;
    if (full) {
        ok = ok && rep.oracle_agrees;
        for (const auto& d : rep.diagnostics) ok = ok && (!d.applicable || d.consistent);
    }
    o.json = report_to_json(rep);
    o.json["command"] = full ? "verify" : "bounds";
    o.json["status"] = ok ? "pass" : "violation";
    if (!full) o.json.erase("diagnostics");
    o.csv = report_to_csv(rep);
    o.text = records_text(rep) + (full ? diagnostics_text(rep) : "") + (ok ? "status pass\n" : "status VIOLATION\n");
    return ok ? kExitOk : kExitViolation;
}

int cmd_remark(const RunConfig& cfg, Output& o) {
    const RemarkReport r = remark_repro(cfg.seed, cfg.samples, cfg.tol.value_or(5e-4));
    o.json = remark_to_json(r);
    std::ostringstream csv, text;
    csv << "name,anchor,computed,expected,ok\n";
    text << std::left << std::setw(22) << "bound" << std::setw(14) << "computed" << std::setw(14) << "expected"
         << "status\n";
    for (const auto& e : r.entries) {
        csv << e.name << ",\"" << e.anchor << "\"," << format_full(e.computed) << "," << format_full(e.expected) << ","
            << (e.ok ? "true" : "false") << "\n";
        text << std::left << std::setw(22) << e.name << std::setw(14) << format_sig(e.computed) << std::setw(14)
             << format_sig(e.expected) << (e.ok ? "ok" : "MISMATCH") << "\n";
    }
    text << "ordering sum < product_sum_b < product_sum_c < feki: " << (r.ordering_ok ? "ok" : "VIOLATED") << "\n";
    text << "dw(X+Y) " << format_sig(r.dw_sum) << "  oracle " << format_sig(r.dw_oracle) << "  below sum bound: "
         << (r.dw_below_sum_bound ? "yes" : "NO") << "\n";
    text << (r.pass() ? "status pass\n" : "status VIOLATION\n");
    o.csv = csv.str();
    o.text = text.str();
    return r.pass() ? kExitOk : kExitViolation;
}

int cmd_exact(const RunConfig& cfg, Output& o) {
    const Metric m = load_metric(cfg);
    const CMatrix x = load_matrix(cfg.op);
    if (cfg.kind != "ix" && cfg.kind != "0x" && cfg.kind != "both")
        throw Error(Errc::parse_error, "--kind must be ix, 0x or both");
    const RadiusEstimate b = op_seminorm(m, x);
    const Eigen::Index n = m.dim();
    const Metric m2 = doubled(m);

    o.json = Json{{"command", "exact"}, {"dim", n}, {"rank", m.rank()}, {"b", b.value}};
    o.json["cardano"] = b.value > 0.0 ? cardano_to_json(cardano_theta0(b.value)) : Json(nullptr);
    std::ostringstream csv, text;
    csv << "kind,closed_form,oracle,method,warning\n";
    text << "b " << format_sig(b.value) << "\n";

    auto run_kind = [&](const std::string& kind) {
        const bool ix = kind == "ix";
        const RadiusEstimate e = ix ? dw_exact_ix(m, x) : dw_exact_0x(m, x);
        const CMatrix zero = CMatrix::Zero(n, n);
        const CMatrix block = assemble(ix ? CMatrix(CMatrix::Identity(n, n)) : zero, x, zero, zero);
        Json j = estimate_to_json(e);
        std::optional<RadiusEstimate> oracle;
        if (cfg.samples > 0 && m2.rank() <= kOracleMaxRank)
            oracle = oracle_extremum(m2, block, Objective::dw, cfg.samples, cfg.seed);
        j["oracle"] = oracle ? Json(oracle->value) : Json(nullptr);
        o.json[ix ? "dw_ix" : "dw_0x"] = j;
        csv << kind << "," << format_full(e.value) << "," << (oracle ? format_full(oracle->value) : "") << ","
            << to_string(e.method) << "," << (e.warning ? "true" : "false") << "\n";
        text << "dw_" << kind << " " << format_sig(e.value);
        if (oracle) text << "  oracle " << format_sig(oracle->value);
        text << "  witness " << vector_text(e.witness) << "\n";
        if (e.warning) text << "  warning: closed form and grid disagree\n";
    };
    if (cfg.kind != "0x") run_kind("ix");
    if (cfg.kind != "ix") run_kind("0x");
    o.csv = csv.str();
    o.text = text.str();
    return kExitOk;
}

bool outcome_ok(const Json& outcome) {
    for (const auto& [name, c] : outcome.at("checks").items())
        if (!c.at("ok").get<bool>()) return false;
    return true;
}

int cmd_replay(const RunConfig& cfg, Output& o) {
    const Json in = read_json_file(cfg.replay);
    std::vector<Json> violations;
    if (in.is_array()) {
        violations.assign(in.begin(), in.end());
    } else if (in.contains("suites")) {
        for (const auto& s : in.at("suites"))
            for (const auto& v : s.at("violations")) violations.push_back(v);
    } else if (in.contains("violations")) {
        for (const auto& v : in.at("violations")) violations.push_back(v);
    } else {
        violations.push_back(in);
    }

    bool any_failing = false;
    Json arr = Json::array();
    std::ostringstream csv, text;
    csv << "suite,check,index,identical,reproduces\n";
    for (const auto& v : violations) {
        const Json outcome = replay_violation(v);
        const bool identical = v.contains("outcome") && v.at("outcome") == outcome;
        const bool reproduces = !outcome_ok(outcome);
        any_failing = any_failing || reproduces;
        const std::string suite = v.value("suite", "");
        const std::string check = v.value("check", "");
        const int index = v.value("index", -1);
        arr.push_back(Json{{"suite", suite}, {"check", check}, {"index", index}, {"identical", identical},
                           {"reproduces", reproduces}, {"outcome", outcome}});
        csv << suite << "," << check << "," << index << "," << (identical ? "true" : "false") << ","
            << (reproduces ? "true" : "false") << "\n";
        text << suite << " #" << index << " " << check << ": " << (identical ? "identical" : "DIFFERENT")
             << (reproduces ? ", violation reproduces\n" : ", passes\n");
    }
    o.json = Json{{"command", "suite"}, {"replay", cfg.replay}, {"replays", arr}};
    o.csv = csv.str();
    o.text = text.str();
    return any_failing ? kExitViolation : kExitOk;
}

int cmd_suite(const RunConfig& cfg, Output& o) {
    if (!cfg.replay.empty()) return cmd_replay(cfg, o);
    std::vector<std::string> names;
    if (cfg.suite == "all") {
        names = suite_names();
    } else {
        const auto all = suite_names();
        if (std::find(all.begin(), all.end(), cfg.suite) == all.end())
            throw Error(Errc::parse_error, "unknown suite '" + cfg.suite + "'");
        names = {cfg.suite};
    }
    SuiteConfig sc;
    sc.seed = cfg.seed;
    sc.samples = cfg.samples;
    sc.count = cfg.count;

    bool pass = true;
    Json suites = Json::array();
    std::ostringstream csv, text;
    csv << "suite,check,passed,total,worst\n";
    for (const auto& name : names) {
        const SuiteResult r = run_suite(name, sc);
        pass = pass && r.pass();
        suites.push_back(suite_result_to_json(r));
        text << name << ": " << r.instances << " instances, " << std::fixed << std::setprecision(1) << r.seconds
             << " s, " << (r.pass() ? "pass" : "VIOLATION") << "\n";
        text.unsetf(std::ios::fixed);
        for (const auto& c : r.checks) {
            csv << name << "," << c.name << "," << c.passed << "," << c.total << "," << format_full(c.worst) << "\n";
            text << "  " << std::left << std::setw(24) << c.name << c.passed << "/" << c.total << "  worst "
                 << format_sig(c.worst) << "\n";
        }
    }
    o.json = Json{{"command", "suite"}, {"seed", cfg.seed}, {"samples", cfg.samples}, {"pass", pass},
                  {"suites", suites}};
    o.csv = csv.str();
    o.text = text.str();
    return pass ? kExitOk : kExitViolation;
}

} // namespace

bool RemarkReport::pass() const {
    bool ok = ordering_ok && dw_below_sum_bound;
    for (const auto& e : entries) ok = ok && e.ok;
    return ok;
}

RemarkReport remark_repro(std::uint64_t seed, int samples, double tol) {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    CMatrix x = CMatrix::Zero(2, 2);
    x(0, 1) = 1.0;
    CMatrix y = CMatrix::Zero(2, 2);
    y(0, 0) = 1.0;
    const CMatrix id = CMatrix::Identity(2, 2);
    const Metric m = build_metric(a);

    const BoundRecord sum = sum_upper(m, x, y).first;
    const BoundRecord pb = product_sum_upper_b(m, id, id, x, y, +1);
    const BoundRecord pc = product_sum_upper_c(m, id, id, x, y, +1);
    const BoundRecord feki = feki_sum_upper(m, x, y);

    RemarkReport r;
    r.tol = tol;
    const std::array<std::pair<const BoundRecord*, double>, 4> rows = {
        {{&sum, 2.621320}, {&pb, 3.240466}, {&pc, 3.26928}, {&feki, 4.2994}}};
    for (const auto& [rec, expected] : rows)
        r.entries.push_back(RemarkEntry{rec->name, rec->anchor, rec->value, expected,
                                        std::abs(rec->value - expected) <= tol});
    r.ordering_ok = true;
    for (std::size_t i = 1; i < r.entries.size(); ++i)
        r.ordering_ok = r.ordering_ok && r.entries[i - 1].computed < r.entries[i].computed;

    const CMatrix s = x + y;
    r.dw_sum = dw_radius(m, s).value;
    r.dw_oracle = samples > 0 ? oracle_extremum(m, s, Objective::dw, samples, seed).value : r.dw_sum;
    r.dw_below_sum_bound = std::max(r.dw_sum, r.dw_oracle) <= r.entries.front().expected + tol;
    return r;
}

Json remark_to_json(const RemarkReport& r) {
    Json rows = Json::array();
    for (const auto& e : r.entries)
        rows.push_back(Json{{"name", e.name}, {"anchor", e.anchor}, {"computed", e.computed},
                            {"expected", e.expected}, {"ok", e.ok}});
    return Json{{"command", "remark-repro"}, {"tol", r.tol},          {"bounds", rows},
                {"ordering_ok", r.ordering_ok}, {"dw_sum", r.dw_sum}, {"dw_oracle", r.dw_oracle},
                {"dw_below_sum_bound", r.dw_below_sum_bound}, {"pass", r.pass()}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Davis-Wielandt radius toolkit for positive semidefinite metrics"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed")->check(CLI::PositiveNumber);
        sub->add_option("--samples", cfg.samples, "oracle samples")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", cfg.out, "write the report to this file");
    };
    auto add_inputs = [&cfg](CLI::App* sub) {
        sub->add_option("--metric", cfg.metric, "metric A (matrix JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--operator", cfg.op, "operator T (matrix JSON)")->required()->check(CLI::ExistingFile);
    };
    auto add_tol = [&cfg](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "grading tolerance override")->check(CLI::NonNegativeNumber);
    };

    CLI::App* compute = app.add_subcommand("compute", "seminorm, minimum modulus, w, c and dw of T");
    add_inputs(compute);
    add_common(compute);

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate and grade every bound on T (or on X + Y)");
    add_inputs(bounds);
    bounds->add_option("--operator2", cfg.op2, "second operator Y for pair bounds")->check(CLI::ExistingFile);
    add_common(bounds);
    add_tol(bounds);

    CLI::App* verify = app.add_subcommand("verify", "bounds, equality diagnostics and oracle agreement for T");
    add_inputs(verify);
    add_common(verify);
    add_tol(verify);

    CLI::App* remark = app.add_subcommand("remark-repro", "reproduce the four published X + Y bounds");
    add_common(remark);
    add_tol(remark);

    CLI::App* exact = app.add_subcommand("exact", "closed-form dw of [[I, X], [O, O]] and [[O, X], [O, O]]");
    add_inputs(exact);
    exact->add_option("--kind", cfg.kind, "ix, 0x or both")->check(CLI::IsMember({"ix", "0x", "both"}));
    add_common(exact);

    CLI::App* suite = app.add_subcommand("suite", "run the randomized property suites");
    suite->add_option("--suite", cfg.suite, "suite name or 'all'");
    suite->add_option("--count", cfg.count, "instances per suite (0 = default)")->check(CLI::NonNegativeNumber);
    suite->add_option("--replay", cfg.replay, "replay serialized violations")->check(CLI::ExistingFile);
    add_common(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    Output o;
    int code = kExitOk;
    try {
        if (*compute) code = cmd_compute(cfg, o);
        else if (*bounds) code = cmd_bounds(cfg, o, false);
        else if (*verify) code = cmd_bounds(cfg, o, true);
        else if (*remark) code = cmd_remark(cfg, o);
        else if (*exact) code = cmd_exact(cfg, o);
        else code = cmd_suite(cfg, o);
    } catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << "\n";
        return e.code() == Errc::parse_error ? kExitParse : kExitPrecondition;
    } catch (const Json::exception& e) {
        err << "ParseError: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }

    const std::string body = render(o, cfg.format);
    if (cfg.out.empty()) {
        out << body;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "cannot write " << cfg.out << "\n";
            return kExitInternal;
        }
        f << body;
    }
    return code;
}

} // namespace semihilbert::cli
