#pragma once

#include <stdexcept>
#include <string>

namespace coneindex {

// Thrown when an iterative or factorization step fails to converge or
// breaks down. Carries enough context to name the failing operation.
class NumericError : public std::runtime_error {
public:
    NumericError(std::string operation, std::string detail)
        : std::runtime_error(operation + ": " + detail),
          operation_(std::move(operation)) {}

    const std::string& operation() const noexcept { return operation_; }

private:
    std::string operation_;
};

} // namespace coneindex
