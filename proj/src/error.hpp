#ifndef MMK_ERROR_HPP
#define MMK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mmk {

enum class ErrorCode {
    InvalidArgument,
    ChartDegenerate,
    RankDeficient,
    NumericalBreakdown,
    DenominatorUnderflow,
    BlowUp,
    Stiffness,
    NoBracket,
    EndpointSingular,
    NotMinimal,
    PoleSwapExhausted,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace mmk

#endif
