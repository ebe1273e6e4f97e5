#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace thetacong {

enum class ErrorKind {
    invalid_argument,
    non_invertible,
    modulus_mismatch,
    insufficient_precision,
    inconsistent_input,
    empty_space,
    insufficient_data,
    excluded_case,
    hypothesis_failure,
    shape_mismatch,
    table_range,
    io,
};

const char *to_string(ErrorKind kind) noexcept;

/// Every contract violation in the library is reported through this type.
/// `index()` carries the grid index of the first offending coefficient for
/// mismatch-type failures.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what, std::optional<std::int64_t> index = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::int64_t> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<std::int64_t> index_;
};

} // namespace thetacong
