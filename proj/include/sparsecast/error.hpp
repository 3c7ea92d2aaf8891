#pragma once

#include <stdexcept>
#include <string>

namespace sparsecast {

enum class ErrorCode {
    malformed_header,
    unsupported_maxval,
    dimension_not_divisible,
    dimension_mismatch,
    length_mismatch,
    layout_mismatch,
    version_mismatch,
    truncated,
    invalid_argument,
    all_variances_zero,
    zero_power_stream,
    all_groups_discarded,
    non_finite,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sparsecast
