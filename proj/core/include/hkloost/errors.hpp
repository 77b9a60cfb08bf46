#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hkloost {

// Precondition violated by the caller (bad coprimality, level mismatch, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is valid mathematically but outside the numerically supported regime.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A record in the result cache could not be parsed.
class CacheCorruption : public std::runtime_error {
public:
    CacheCorruption(std::string path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
          path_(std::move(path)), line_(line) {}

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

}  // namespace hkloost
