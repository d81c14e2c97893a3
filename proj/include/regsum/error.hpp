#pragma once

#include <stdexcept>
#include <string>

namespace regsum {

/// Failure categories reported by the library. The CLI maps
/// `invalid_argument` to exit code 2 and every method failure to 3.
enum class errc {
    invalid_argument,
    undefined_term,
    interpolation_mismatch,
    overlapping_intervals,
    no_stable_limit,
    transform_not_settling,
    cesaro_not_settling,
    symmetry_violated,
    singular_system,
    bad_generating_function,
};

inline const char* errc_name(errc c) noexcept {
    switch (c) {
    case errc::invalid_argument: return "invalid argument";
    case errc::undefined_term: return "undefined term";
    case errc::interpolation_mismatch: return "interpolation mismatch";
    case errc::overlapping_intervals: return "overlapping intervals";
    case errc::no_stable_limit: return "no stable limit";
    case errc::transform_not_settling: return "transform not settling";
    case errc::cesaro_not_settling: return "Cesaro mean not settling";
    case errc::symmetry_violated: return "symmetry violated at probe";
    case errc::singular_system: return "singular system";
    case errc::bad_generating_function: return "generating function mismatch";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace regsum
