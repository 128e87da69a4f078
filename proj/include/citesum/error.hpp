#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace citesum {

/// Failure stage; the CLI maps these to distinct exit codes.
enum class ErrorKind { parse, validation, runtime };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& message) {
    throw Error(ErrorKind::parse, message);
}

[[noreturn]] inline void throw_validation(const std::string& message) {
    throw Error(ErrorKind::validation, message);
}

[[noreturn]] inline void throw_runtime(const std::string& message) {
    throw Error(ErrorKind::runtime, message);
}

}  // namespace citesum
