#pragma once

#include <stdexcept>
#include <string>

namespace gtx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlphabetMismatch : Error {
    using Error::Error;
};

struct InvalidMatch : Error {
    using Error::Error;
};

struct DanglingViolation : Error {
    using Error::Error;
};

struct NotFastRule : Error {
    using Error::Error;
};

struct HostMismatch : Error {
    using Error::Error;
};

struct AlphabetClash : Error {
    using Error::Error;
};

struct NotInImage : Error {
    NotInImage(const std::string& msg, long long node) : Error(msg), node_id(node) {}
    long long node_id;
};

struct BadSize : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line_no)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    int line;
};

} // namespace gtx
