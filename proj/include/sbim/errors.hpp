#ifndef SBIM_ERRORS_HPP
#define SBIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sbim {

/// vector length does not match the objective dimension
class dimension_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// argument outside the domain of an operation (t <= 0, n = 0, ...)
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// invalid configuration values or names
class config_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// an implicit or proximal solve did not converge
class solver_error : public std::runtime_error
{
public:
    solver_error(const std::string &what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

/// swarm state cannot be advanced (no alive agents, ...)
class state_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// rate estimator has too few usable points
class estimate_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// file could not be read or written
class io_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace sbim

#endif
