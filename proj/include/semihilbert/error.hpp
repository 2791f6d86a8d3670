#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semihilbert {

enum class Errc {
    empty_matrix,
    not_hermitian,
    not_positive_semidefinite,
    dimension_mismatch,
    not_a_bounded,
    not_in_ba,
    rank_too_large,
    zero_t,
    degenerate_norm,
    nonpositive_b,
    parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc kinds above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace semihilbert
