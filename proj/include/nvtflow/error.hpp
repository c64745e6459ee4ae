#ifndef NVTFLOW_ERROR_HPP
#define NVTFLOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nvt {

// Invalid configuration or input document (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thermodynamic state outside the admissible domain (covolume violation,
// non-positive density, negative SAV radicand, ...). Aborts the step.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear solver breakdown or non-convergence (CLI exit code 3).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nvt

#endif
