// Error codes shared by all permcc components.

#pragma once

#include <stdexcept>
#include <string>

namespace permcc {

enum class Errc {
    UnknownSymbol,
    ArityMismatch,
    InvalidPosition,
    DegreeMismatch,
    LengthMismatch,
    OutOfRange,
    RepeatedPoint,
    GroupTooLarge,
    NotFlat,
    NotABijection,
    NotFlatOverK,
    NoOccurrence,
    NotOrientable,
    NotEEqual,
    NoMatch,
    ParseError,
    ResourceCap,
    UniverseTooLarge,
    InvalidSignature,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace permcc
