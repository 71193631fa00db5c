#pragma once

#include <stdexcept>
#include <string>

namespace pcnet {

/// Malformed input data (edge lists, token files, configs).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver hit max_iter before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace pcnet
