#pragma once

#include "semihilbert/bounds.hpp"
#include "semihilbert/exact.hpp"
#include "semihilbert/semiop.hpp"

#include <json.hpp>

#include <array>
#include <string>

namespace semihilbert {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": n, "re": [[...]], "im": [[...]]}; "im" is optional.
/// Throws Errc::parse_error on malformed input.
CMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);

CMatrix load_matrix(const std::string& path);
/// {"t11": M, "t12": M, "t21": M, "t22": M}
std::array<CMatrix, 4> load_blocks(const std::string& path);
Json read_json_file(const std::string& path);

Json vector_to_json(const CVector& v);
Json estimate_to_json(const RadiusEstimate& e);
Json record_to_json(const BoundRecord& r);
Json diagnostic_to_json(const Diagnostic& d);
Json report_to_json(const VerificationReport& r);
Json cardano_to_json(const CardanoData& d);

inline constexpr const char* kCsvHeader = "name,anchor,kind,value,dw,gap,satisfied";
std::string record_csv_row(const BoundRecord& r);
std::string report_to_csv(const VerificationReport& r);

/// Round-trip precision for CSV; text output uses format_sig.
std::string format_full(double v);
std::string format_sig(double v, int digits = 6);

} // namespace semihilbert
