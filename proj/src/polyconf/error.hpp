#ifndef POLYCONF_ERROR_HPP
#define POLYCONF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polyconf {

// Stable error taxonomy, mirrored one-to-one by the C API status codes.
enum class ErrorCode {
    Internal = 1,
    InvalidArgument,
    DegenerateFrame,
    SizeMismatch,
    NearPiAmbiguity,
    InvalidUnitSpec,
    JunctionViolation,
    NotRotatable,
    NotStandardized,
    InvalidTimesteps,
    InvalidK,
    IndexOutOfRange,
    EmptyMatrix,
    GraphMismatch,
    OracleFailure,
    ProjectionFailure,
    ParseError,
    HashMismatch,
    MalformedRecord,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

#define POLYCONF_DEFINE_ERROR(NAME, CODE)                                              \
    class NAME : public Error {                                                        \
    public:                                                                            \
        explicit NAME(const std::string& msg) : Error(ErrorCode::CODE, msg) {}         \
    }

POLYCONF_DEFINE_ERROR(InvalidArgumentError, InvalidArgument);
POLYCONF_DEFINE_ERROR(DegenerateFrameError, DegenerateFrame);
POLYCONF_DEFINE_ERROR(SizeMismatchError, SizeMismatch);
POLYCONF_DEFINE_ERROR(InvalidUnitSpecError, InvalidUnitSpec);
POLYCONF_DEFINE_ERROR(JunctionViolationError, JunctionViolation);
POLYCONF_DEFINE_ERROR(NotRotatableError, NotRotatable);
POLYCONF_DEFINE_ERROR(NotStandardizedError, NotStandardized);
POLYCONF_DEFINE_ERROR(InvalidTimestepsError, InvalidTimesteps);
POLYCONF_DEFINE_ERROR(InvalidKError, InvalidK);
POLYCONF_DEFINE_ERROR(IndexOutOfRangeError, IndexOutOfRange);
POLYCONF_DEFINE_ERROR(EmptyMatrixError, EmptyMatrix);
POLYCONF_DEFINE_ERROR(GraphMismatchError, GraphMismatch);
POLYCONF_DEFINE_ERROR(OracleFailureError, OracleFailure);
POLYCONF_DEFINE_ERROR(ProjectionFailureError, ProjectionFailure);
POLYCONF_DEFINE_ERROR(ParseError, ParseError);
POLYCONF_DEFINE_ERROR(HashMismatchError, HashMismatch);
POLYCONF_DEFINE_ERROR(MalformedRecordError, MalformedRecord);
POLYCONF_DEFINE_ERROR(IoError, Io);

#undef POLYCONF_DEFINE_ERROR

} // namespace polyconf

#endif
