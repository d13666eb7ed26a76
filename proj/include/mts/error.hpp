#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mts {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Precondition on a value (e.g. log of zero, fund_seq of a successor).
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain", m) {}
};

// A configured horizon or resource cap was exceeded.
struct HorizonError : Error {
    explicit HorizonError(const std::string& m) : Error("horizon", m) {}
};

struct ParseError : Error {
    ParseError(const std::string& m, std::size_t pos)
        : Error("parse", m + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct ConstructionError : Error {
    explicit ConstructionError(const std::string& m) : Error("construction", m) {}
};

struct VerificationError : Error {
    explicit VerificationError(const std::string& m) : Error("verification", m) {}
};

}  // namespace mts
