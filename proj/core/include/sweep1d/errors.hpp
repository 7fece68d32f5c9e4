#pragma once

#include <stdexcept>
#include <string>

namespace sweep1d {

struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownInitialCondition : std::runtime_error {
    explicit UnknownInitialCondition(const std::string& what) : std::runtime_error(what) {}
};

struct NonPhysicalState : std::runtime_error {
    explicit NonPhysicalState(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidWidth : std::runtime_error {
    explicit InvalidWidth(const std::string& what) : std::runtime_error(what) {}
};

struct PayloadSizeMismatch : std::runtime_error {
    explicit PayloadSizeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct TagMismatch : std::runtime_error {
    explicit TagMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct PhaseSkew : std::runtime_error {
    explicit PhaseSkew(const std::string& what) : std::runtime_error(what) {}
};

struct ModeMismatch : std::runtime_error {
    explicit ModeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateFit : std::runtime_error {
    explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

/// Raised in a rank that is parked at a barrier when another rank fails.
struct TransportAborted : std::runtime_error {
    explicit TransportAborted(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sweep1d
