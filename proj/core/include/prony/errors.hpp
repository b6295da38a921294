#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace prony {

// Argument/geometry problems map to CLI exit code 2, numerical failures to 3.

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularityError : public NumericalError {
public:
    explicit SingularityError(const std::string& what, int pivot = -1)
        : NumericalError(what), pivot_index(pivot) {}
    int pivot_index;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what,
                     std::vector<std::complex<double>> best,
                     std::vector<double> res)
        : NumericalError(what), best_iterate(std::move(best)), residuals(std::move(res)) {}
    std::vector<std::complex<double>> best_iterate;
    std::vector<double> residuals;
};

class RankError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Backward-error estimators report failure without aborting the pipeline.
class EstimatorError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace prony
