#pragma once

#include <stdexcept>
#include <string>

namespace sphfano {

enum class ErrorCode {
    ParseError,
    DegenerateInput,
    OriginNotInterior,
    ZeroVector,
    RankMismatch,
    UnknownFamily,
    ParamsOutOfDomain,
    NotReflexive,
    BoundTooTight,
    RelationRankDeficit,
    NonIntegerDegree,
    TorsionInPicard,
    MappingConflict,
    MalformedExpectedFile,
    IoError,
};

const char* code_name(ErrorCode c);

/// True for codes that signal a broken internal invariant rather than bad input.
bool is_internal(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(code_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace sphfano
