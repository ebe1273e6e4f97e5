#include "thetacong/error.hpp"

namespace thetacong {

const char *to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::non_invertible: return "non-invertible";
    case ErrorKind::modulus_mismatch: return "modulus-mismatch";
    case ErrorKind::insufficient_precision: return "insufficient-precision";
    case ErrorKind::inconsistent_input: return "inconsistent-input";
    case ErrorKind::empty_space: return "empty-space";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::excluded_case: return "excluded-case";
    case ErrorKind::hypothesis_failure: return "hypothesis-failure";
    case ErrorKind::shape_mismatch: return "shape-mismatch";
    case ErrorKind::table_range: return "table-range";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &what, std::optional<std::int64_t> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index)
{
}

} // namespace thetacong
