#pragma once

#include <stdexcept>
#include <string>

namespace degseq {

// Input exceeds a hard enumeration/search cutoff (full enumeration of I_n,
// graph enumeration, exact isomorphism search).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature failed to reach the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved relative tolerance " +
                             std::to_string(achieved) + ")"),
          achieved_tolerance(achieved) {}

    double achieved_tolerance;
};

// Input is valid as data but makes the requested formula singular.
class degenerate_input_error : public std::invalid_argument {
public:
    explicit degenerate_input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A sampler configuration that cannot be executed (e.g. vanishing acceptance).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace degseq
