#include "semihilbert/io.hpp"

#include "semihilbert/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace semihilbert {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::parse_error, what); }

RVector::Index checked_size(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) fail(std::string("matrix needs integer field '") + key + "'");
    const auto v = j.at(key).get<long long>();
    if (v < 0) fail(std::string("negative '") + key + "'");
    return static_cast<RVector::Index>(v);
}

void fill(const Json& rows, Eigen::Index nr, Eigen::Index nc, const char* key, CMatrix& out, bool imag) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != nr) fail(std::string("'") + key + "' must have rows entries");
    for (Eigen::Index i = 0; i < nr; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != nc)
            fail(std::string("'") + key + "' row " + std::to_string(i) + " must have cols entries");
        for (Eigen::Index k = 0; k < nc; ++k) {
            const Json& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) fail(std::string("'") + key + "' entries must be numbers");
            const double x = v.get<double>();
            if (!std::isfinite(x)) fail("matrix entries must be finite");
            if (imag) out(i, k).imag(x);
            else out(i, k).real(x);
        }
    }
}

Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json params_to_json(const std::vector<std::pair<std::string, double>>& params) {
    Json j = Json::object();
    for (const auto& [k, v] : params) j[k] = real_or_null(v);
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) fail("matrix must be a JSON object");
    const auto nr = checked_size(j, "rows");
    const auto nc = checked_size(j, "cols");
    if (!j.contains("re")) fail("matrix needs field 're'");
    CMatrix m = CMatrix::Zero(nr, nc);
    fill(j.at("re"), nr, nc, "re", m, false);
    if (j.contains("im") && !j.at("im").is_null()) fill(j.at("im"), nr, nc, "im", m, true);
    return m;
}

Json matrix_to_json(const CMatrix& m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json rr = Json::array(), ri = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            rr.push_back(m(i, k).real());
            ri.push_back(m(i, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        fail("'" + path + "': " + e.what());
    }
}

CMatrix load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

std::array<CMatrix, 4> load_blocks(const std::string& path) {
    const Json j = read_json_file(path);
    std::array<CMatrix, 4> out;
    const char* keys[4] = {"t11", "t12", "t21", "t22"};
    for (std::size_t k = 0; k < 4; ++k) {
        if (!j.contains(keys[k])) fail(std::string("block file needs '") + keys[k] + "'");
        out[k] = matrix_from_json(j.at(keys[k]));
    }
    return out;
}

Json vector_to_json(const CVector& v) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return Json{{"re", re}, {"im", im}};
}

Json estimate_to_json(const RadiusEstimate& e) {
    Json j;
    j["value"] = real_or_null(e.value);
    j["method"] = std::string(to_string(e.method));
    j["iterations"] = e.iterations;
    j["residual"] = real_or_null(e.residual);
    j["warning"] = e.warning;
    j["maximizer"] = vector_to_json(e.maximizer);
    j["witness"] = vector_to_json(e.witness);
    return j;
}

Json record_to_json(const BoundRecord& r) {
    Json j;
    j["name"] = r.name;
    j["anchor"] = r.anchor;
    j["kind"] = std::string(to_string(r.kind));
    j["applicable"] = r.applicable;
    j["value"] = r.applicable ? real_or_null(r.value) : Json(nullptr);
    j["dw"] = real_or_null(r.reference_dw);
    j["gap"] = r.graded ? real_or_null(r.gap) : Json(nullptr);
    j["satisfied"] = r.satisfied;
    j["params"] = params_to_json(r.params);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json diagnostic_to_json(const Diagnostic& d) {
    Json j;
    j["name"] = d.name;
    j["applicable"] = d.applicable;
    j["condition_a"] = d.condition_a;
    j["condition_b"] = d.condition_b;
    j["residual_a"] = real_or_null(d.residual_a);
    j["residual_b"] = real_or_null(d.residual_b);
    j["consistent"] = d.consistent;
    if (d.witness.size() > 0) j["witness"] = vector_to_json(d.witness);
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["instance"] = {{"dim", r.dim}, {"rank", r.rank}, {"metric_hash", r.metric_hash}, {"operator_hash", r.operator_hash}};
    j["seed"] = r.seed;
    j["tol"] = r.tol;
    Json ref;
    ref["value"] = r.dw;
    ref["multistart"] = estimate_to_json(r.dw_multistart);
    ref["oracle_used"] = r.oracle_used;
    if (r.oracle_used) {
        ref["oracle"] = r.dw_oracle;
        ref["oracle_rel_diff"] = r.oracle_rel_diff;
        ref["oracle_agrees"] = r.oracle_agrees;
    }
    j["reference_dw"] = std::move(ref);
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(record_to_json(rec));
    j["records"] = std::move(recs);
    Json diags = Json::array();
    for (const auto& d : r.diagnostics) diags.push_back(diagnostic_to_json(d));
    j["diagnostics"] = std::move(diags);
    j["pass"] = r.pass;
    return j;
}

Json cardano_to_json(const CardanoData& d) {
    Json j;
    j["b"] = d.b;
    j["p"] = d.p;
    j["q"] = d.q;
    j["r"] = d.r;
    j["s"] = d.s;
    j["alpha"] = d.alpha;
    j["beta"] = real_or_null(d.beta);
    j["gamma"] = real_or_null(d.gamma);
    j["theta0"] = d.theta0;
    j["used_trig_fallback"] = d.used_trig_fallback;
    return j;
}

std::string format_full(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_sig(double v, int digits) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string record_csv_row(const BoundRecord& r) {
    std::ostringstream os;
    os << csv_escape(r.name) << ',' << csv_escape(r.anchor) << ',' << to_string(r.kind) << ','
       << (r.applicable ? format_full(r.value) : "") << ',' << format_full(r.reference_dw) << ','
       << (r.graded ? format_full(r.gap) : "") << ',' << (r.applicable ? (r.satisfied ? "true" : "false") : "n/a");
    return os.str();
}

std::string report_to_csv(const VerificationReport& r) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& rec : r.records) out += record_csv_row(rec) + "\n";
    return out;
}

} // namespace semihilbert
