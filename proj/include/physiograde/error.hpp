#pragma once

#include <stdexcept>
#include <string>

namespace physio {

/// Failure categories surfaced by the pipeline. CLI maps domain failures to
/// exit code 1 and config/usage failures to exit code 2.
enum class Errc {
    ParseError,
    InvalidRate,
    EmptyRecording,
    InvalidGrade,
    DuplicateRecord,
    IncompleteSession,
    MissingGrade,
    NoCommonWindow,
    InvalidWindow,
    EmptyInput,
    InvalidSample,
    DegenerateSignal,
    SingleClassTrainingSet,
    InvalidK,
    InsufficientStudents,
    UndefinedAuc,
    InvalidArgument,
    IoError,
    ConfigError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace physio
