#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adslf {

// Numeric failures carry enough context to report the offending nodes.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : NumericError {
    using NumericError::NumericError;
};
struct PreconditionViolated : NumericError {
    using NumericError::NumericError;
};
struct TruncationOverflow : NumericError {
    using NumericError::NumericError;
};
struct NotInBigCell : NumericError {
    std::vector<std::pair<int, int>> nodes;  // offending grid nodes, may be empty
    explicit NotInBigCell(const std::string& msg, std::vector<std::pair<int, int>> n = {})
        : NumericError(msg), nodes(std::move(n)) {}
};
struct NoConvergence : NumericError {
    using NumericError::NumericError;
};
struct GridTooSmall : NumericError {
    using NumericError::NumericError;
};
struct DegenerateDerivative : NumericError {
    using NumericError::NumericError;
};
struct SingularData : NumericError {
    using NumericError::NumericError;
};
struct DegenerateGaussMap : NumericError {
    using NumericError::NumericError;
};
struct DegenerateOmega : NumericError {
    using NumericError::NumericError;
};
struct DegenerateTangent : NumericError {
    using NumericError::NumericError;
};
struct InvalidParameter : NumericError {
    using NumericError::NumericError;
};
struct NoRealAngle : NumericError {
    using NumericError::NumericError;
};
struct SingularAngle : NumericError {
    using NumericError::NumericError;
};
struct FullySingular : NumericError {
    using NumericError::NumericError;
};
struct DegenerateData : NumericError {
    using NumericError::NumericError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace adslf
