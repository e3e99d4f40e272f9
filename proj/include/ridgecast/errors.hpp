#pragma once

#include <stdexcept>
#include <string>

namespace ridgecast {

enum class ErrorCode {
    IndexOutOfRange,
    FileNotFound,
    SchemaMismatch,
    NoTimestampColumn,
    InvalidTimestamp,
    AllMissingColumn,
    UncoveredColumn,
    EmptyFitSet,
    DimensionMismatch,
    DegenerateSplit,
    UnknownTestTimestamp,
    TooFewRows,
    NonFiniteInput,
    InsufficientData,
    SingularSystem,
    StaleModel,
    CorruptFile,
    VersionUnsupported,
    EmptyRowSet,
    KOutOfRange,
    LengthMismatch,
    EmptyInput,
    InvalidSpec,
    InvalidArgument,
    ConstraintViolation,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ridgecast
