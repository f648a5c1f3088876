#ifndef MAASS_ERRORS_HPP
#define MAASS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace maass {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument / parameter outside its mathematical range.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A point landed on (or within tolerance of) the boundary of its model.
struct BoundaryError : Error {
    explicit BoundaryError(const std::string& what) : Error(what) {}
};

// An iteration failed to converge within its cap.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

// Inconsistent or unusable run configuration.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace maass

#endif
