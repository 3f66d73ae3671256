#pragma once

#include <stdexcept>
#include <string>

namespace adaptnorm {

//! Invalid user input: bad config value, violated design invariant.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::string const& what) : std::runtime_error(what) {}
};

//! A quadrature or optimizer tolerance was not met.
class NumericalError : public std::runtime_error
{
  public:
    explicit NumericalError(std::string const& what)
        : std::runtime_error(what)
    {
    }
};

}  // namespace adaptnorm
