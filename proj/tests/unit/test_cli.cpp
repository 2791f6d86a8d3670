#include "helpers.hpp"

#include "cli.hpp"

#include "semihilbert/io.hpp"
#include "semihilbert/suites.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

using namespace semihilbert;
using namespace testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "semihilbert-cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_matrix(const std::string& name, const CMatrix& m) {
    std::ofstream(name) << matrix_to_json(m).dump();
    return name;
}

struct Files {
    std::string a12 = write_matrix("cli_a12.json", kA12);
    std::string a10 = write_matrix("cli_a10.json", diag({1.0, 0.0}));
    std::string id = write_matrix("cli_id.json", eye(2));
    std::string x = write_matrix("cli_x.json", kX);
    std::string y = write_matrix("cli_y.json", kY);
    ~Files() {
        for (const auto* f : {&a12, &a10, &id, &x, &y}) std::remove(f->c_str());
    }
};

} // namespace

TEST_CASE("compute on the identity") {
    Files f;
    const Result r = run({"compute", "--metric", f.id, "--operator", f.id, "--samples", "2000"});
    REQUIRE(r.code == cli::kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["quantities"]["dw"]["value"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    CHECK(j["quantities"]["numerical_radius"]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(j["quantities"]["norm"]["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("compute on diag(1, 2) with nilpotent X, text output") {
    Files f;
    const Result r = run({"compute", "--metric", f.a12, "--operator", f.x, "--format", "text", "--samples", "2000"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("0.707107") != std::string::npos);
    CHECK(r.out.find("0.353553") != std::string::npos);
    CHECK(r.out.find("0.5 ") != std::string::npos);
}

TEST_CASE("compute rejects a non A-bounded operator with exit 3") {
    Files f;
    const Result r = run({"compute", "--metric", f.a10, "--operator", f.x});
    CHECK(r.code == cli::kExitPrecondition);
    CHECK(r.err.find("residual") != std::string::npos);
}

TEST_CASE("parse failures exit 2") {
    Files f;
    std::ofstream("cli_broken.json") << "{\"rows\": 2";
    CHECK(run({"compute", "--metric", "cli_broken.json", "--operator", f.x}).code == cli::kExitParse);
    std::remove("cli_broken.json");
    CHECK(run({"compute", "--metric", "missing.json", "--operator", f.x}).code == cli::kExitParse);
    CHECK(run({"compute", "--metric", f.a12}).code == cli::kExitParse);
    CHECK(run({"nonsense"}).code == cli::kExitParse);
    CHECK(run({"compute", "--metric", f.a12, "--operator", f.x, "--seed", "0"}).code == cli::kExitParse);
    CHECK(run({"compute", "--metric", f.a12, "--operator", f.x, "--format", "xml"}).code == cli::kExitParse);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("bounds and verify") {
    Files f;
    const Result b = run({"bounds", "--metric", f.a12, "--operator", f.x, "--samples", "2000", "--format", "csv"});
    CHECK(b.code == cli::kExitOk);
    CHECK(b.out.rfind(std::string(kCsvHeader), 0) == 0);
    const Result p = run({"bounds", "--metric", f.a12, "--operator", f.x, "--operator2", f.y, "--samples", "2000"});
    CHECK(p.code == cli::kExitOk);
    const Result v = run({"verify", "--metric", f.a12, "--operator", f.x, "--samples", "2000"});
    CHECK(v.code == cli::kExitOk);
    CHECK(Json::parse(v.out).contains("diagnostics"));
    // a negative grading tolerance is rejected, a huge one still passes
    CHECK(run({"verify", "--metric", f.a12, "--operator", f.x, "--tol", "-1"}).code == cli::kExitParse);
    CHECK(run({"verify", "--metric", f.a12, "--operator", f.x, "--samples", "2000", "--tol", "1"}).code ==
          cli::kExitOk);
}

TEST_CASE("remark-repro") {
    const Result r = run({"remark-repro", "--samples", "20000"});
    REQUIRE(r.code == cli::kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["pass"].get<bool>());
    CHECK(j["ordering_ok"].get<bool>());
    CHECK(j["bounds"].size() == 4);
    // an impossibly tight tolerance turns the regression into a violation
    CHECK(run({"remark-repro", "--samples", "2000", "--tol", "1e-12"}).code == cli::kExitViolation);
}

TEST_CASE("remark report") {
    const cli::RemarkReport r = cli::remark_repro(42, 20000);
    REQUIRE(r.entries.size() == 4);
    CHECK(r.entries[0].computed == doctest::Approx(2.621320).epsilon(5e-4));
    CHECK(r.entries[1].computed == doctest::Approx(3.240466).epsilon(5e-4));
    CHECK(r.entries[2].computed == doctest::Approx(3.26928).epsilon(5e-4));
    CHECK(r.entries[3].computed == doctest::Approx(4.2994).epsilon(5e-4));
    CHECK(r.dw_sum <= 2.621320 + 5e-4);
}

TEST_CASE("exact") {
    Files f;
    const Result r = run({"exact", "--metric", f.a12, "--operator", f.x, "--samples", "20000"});
    REQUIRE(r.code == cli::kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["b"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(j["dw_0x"]["value"].get<double>() == doctest::Approx(0.5));
    CHECK(j["dw_ix"]["value"].get<double>() == doctest::Approx(j["dw_ix"]["oracle"].get<double>()).epsilon(1e-4));
}

TEST_CASE("output is byte-identical across runs and --out writes the same report") {
    Files f;
    const std::vector<std::string> args = {"verify", "--metric", f.a12, "--operator", f.x, "--samples", "3000"};
    const Result a = run(args);
    const Result b = run(args);
    CHECK(a.out == b.out);
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", "cli_report.json"});
    CHECK(run(with_out).code == cli::kExitOk);
    std::stringstream file;
    file << std::ifstream("cli_report.json").rdbuf();
    CHECK(file.str() == a.out);
    std::remove("cli_report.json");
}

TEST_CASE("suite runs and replays") {
    const Result r = run({"suite", "--suite", "cardano", "--count", "5", "--out", "cli_suite.json"});
    CHECK(r.code == cli::kExitOk);
    std::remove("cli_suite.json");
    CHECK(run({"suite", "--suite", "unknown"}).code == cli::kExitParse);

    // a deliberately broken case reproduces as a violation, identical record
    SuiteConfig cfg;
    cfg.count = 1;
    Json c = generate_cases("equality", cfg).at(1);
    const auto n = c["a"]["rows"].get<Eigen::Index>();
    c["t"] = matrix_to_json(CMatrix::Identity(n, n));   // A·I ≠ 0
    const Violation v{"equality", "zero_equality", 1, c, evaluate_case("equality", c)};
    std::ofstream("cli_violation.json") << violation_to_json(v).dump(2);
    const Result rep = run({"suite", "--replay", "cli_violation.json"});
    CHECK(rep.code == cli::kExitViolation);
    const Json j = Json::parse(rep.out);
    CHECK(j["replays"][0]["identical"].get<bool>());
    CHECK(j["replays"][0]["reproduces"].get<bool>());
    std::remove("cli_violation.json");
}
