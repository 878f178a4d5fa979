#ifndef VRPTREE_ERRORS_HPP
#define VRPTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vrpt {

// Bad parameters or a precondition the caller violated.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed instance or solution text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact solvers and exhaustive checkers refuse instances above their cap.
class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace vrpt

#endif
