#pragma once

#include <stdexcept>
#include <string>

namespace wentzell {

/// Error kinds map onto the CLI exit codes: hypothesis violations exit 1,
/// numerical failures exit 2.
enum class ErrorKind {
    invalid_domain,
    too_coarse,
    hypothesis_violation,
    not_elliptic,
    shape_error,
    assembly_error,
    not_spd,
    singular_system,
    unsupported,
    precondition,
    config_error,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const {
        switch (kind_) {
            case ErrorKind::invalid_domain: return "invalid-domain";
            case ErrorKind::too_coarse: return "too-coarse";
            case ErrorKind::hypothesis_violation: return "hypothesis-violation";
            case ErrorKind::not_elliptic: return "not-elliptic";
            case ErrorKind::shape_error: return "shape-error";
            case ErrorKind::assembly_error: return "assembly-error";
            case ErrorKind::not_spd: return "not-spd";
            case ErrorKind::singular_system: return "singular-system";
            case ErrorKind::unsupported: return "unsupported";
            case ErrorKind::precondition: return "precondition";
            case ErrorKind::config_error: return "config-error";
            case ErrorKind::io_error: return "io-error";
        }
        return "error";
    }

private:
    ErrorKind kind_;
};

}  // namespace wentzell
