#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcsp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text-level failure; carries the 1-based input line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Well-formed text with inconsistent content (arity mismatch, duplicate
// name, identically-infinite function, tuple outside the domain, ...).
class SemanticError : public Error {
public:
    using Error::Error;
    SemanticError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message) {}
};

class ArityMismatch : public Error { public: using Error::Error; };
class UnknownLabel : public Error { public: using Error::Error; };
class UnknownVariable : public Error { public: using Error::Error; };
class UnknownFunction : public Error { public: using Error::Error; };
class UnknownSymbol : public Error { public: using Error::Error; };
class DomainMismatch : public Error { public: using Error::Error; };
class EmptyLanguage : public Error { public: using Error::Error; };
class EmptyFeas : public Error { public: using Error::Error; };
class WrongLanguage : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class BudgetExceeded : public Error { public: using Error::Error; };
class NotAPolymorphism : public Error { public: using Error::Error; };
class NotClosed : public Error { public: using Error::Error; };
class NotApplicable : public Error { public: using Error::Error; };
class PreconditionFailed : public Error { public: using Error::Error; };
class MismatchError : public Error { public: using Error::Error; };

// Violated internal invariant (flow conservation, cut/flow equality, ...).
class InternalCheckFailed : public Error { public: using Error::Error; };

} // namespace vcsp
