#pragma once

#include <stdexcept>
#include <string>

namespace equilog {

struct SizeMismatch : std::invalid_argument {
    explicit SizeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NonIntegralMultiplicity : std::runtime_error {
    explicit NonIntegralMultiplicity(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeMultiplicity : std::runtime_error {
    explicit NegativeMultiplicity(const std::string& what) : std::runtime_error(what) {}
};

struct PadTooSmall : std::invalid_argument {
    explicit PadTooSmall(const std::string& what) : std::invalid_argument(what) {}
};

struct NotStableAtD : std::runtime_error {
    explicit NotStableAtD(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationFailed : std::runtime_error {
    explicit VerificationFailed(const std::string& what) : std::runtime_error(what) {}
};

struct NotFree : std::runtime_error {
    explicit NotFree(const std::string& what) : std::runtime_error(what) {}
};

struct CellTooLarge : std::runtime_error {
    explicit CellTooLarge(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace equilog
