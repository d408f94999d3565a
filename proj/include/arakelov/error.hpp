#pragma once

#include <stdexcept>
#include <string>

namespace arakelov {

enum class ErrorKind {
    input,
    convexity,
    recession,
    unbounded,
    infeasible,
    bigness_required,
    grading,
    valuation_of_zero,
    unsupported_center,
    empty_series,
    out_of_range,
    consistency,
    precondition,
    tolerance,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace arakelov
