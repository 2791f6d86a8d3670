#pragma once

#include "semihilbert/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace semihilbert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitViolation = 4;

/// Built-in instance A = diag(1, 2), X = [[0, 1], [0, 0]], Y = [[1, 0], [0, 0]].
struct RemarkEntry {
    std::string name;
    std::string anchor;
    double computed = 0.0;
    double expected = 0.0;
    bool ok = false;
};

struct RemarkReport {
    std::vector<RemarkEntry> entries;   // sum, product-sum (b), product-sum (c), Feki
    double tol = 5e-4;
    bool ordering_ok = false;           // strictly increasing in entry order
    double dw_sum = 0.0;                // dw(X + Y), multistart
    double dw_oracle = 0.0;
    bool dw_below_sum_bound = false;
    bool pass() const;
};

RemarkReport remark_repro(std::uint64_t seed, int samples, double tol = 5e-4);
Json remark_to_json(const RemarkReport& r);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace semihilbert::cli
