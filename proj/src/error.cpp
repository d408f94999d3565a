#include "arakelov/error.hpp"

namespace arakelov {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::convexity: return "convexity";
    case ErrorKind::recession: return "recession";
    case ErrorKind::unbounded: return "unbounded-supremum";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::bigness_required: return "bigness-required";
    case ErrorKind::grading: return "grading-violation";
    case ErrorKind::valuation_of_zero: return "valuation-of-zero";
    case ErrorKind::unsupported_center: return "unsupported-center";
    case ErrorKind::empty_series: return "empty-series";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::tolerance: return "tolerance";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace arakelov
