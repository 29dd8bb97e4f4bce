#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairgate {

enum class ErrorCode {
    CycleDetected,
    DuplicateEdge,
    SelfLoop,
    MalformedName,
    UnknownVariable,
    SyntaxError,
    DuplicateVariable,
    ProbabilityOutOfRange,
    ResourceLimit,
    VariableAlreadyInContext,
    WeakeningTargetIsGoal,
    InadmissibleWeakening,
    EmptyConditioningSet,
    UnknownColumn,
    MalformedDataset,
    SubsetExplosion,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), m_code(code) {}

    ErrorCode code() const noexcept { return m_code; }

private:
    ErrorCode m_code;
};

// Parse failures carry the byte offset and the token the parser wanted.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected, const std::string& found)
        : Error(ErrorCode::SyntaxError,
                "syntax error at offset " + std::to_string(position) + ": expected " + expected +
                    (found.empty() ? std::string{} : ", found '" + found + "'")),
          m_position(position),
          m_expected(std::move(expected)) {}

    std::size_t position() const noexcept { return m_position; }
    const std::string& expected() const noexcept { return m_expected; }

private:
    std::size_t m_position;
    std::string m_expected;
};

}  // namespace fairgate
