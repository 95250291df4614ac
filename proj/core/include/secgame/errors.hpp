#ifndef SECGAME_ERRORS_HPP
#define SECGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace secgame {

/// Exact enumeration would exceed its configured term budget. The message
/// names the offending dimensions and points at the Monte Carlo estimator.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Random graph generation could not satisfy its constraints within the
/// allowed number of retries.
class GenerationError : public std::runtime_error {
public:
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

/// Experiment configuration problem: syntax, unknown keys, or a value that
/// fails a module precondition. Raised before any computation starts.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while writing or reading experiment artifacts.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace secgame

#endif
