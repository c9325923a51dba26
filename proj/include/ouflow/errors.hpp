#ifndef OUFLOW_ERRORS_HPP
#define OUFLOW_ERRORS_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ouflow {

/// Base class for all solver errors. CLI maps ConfigError to exit code 2
/// and everything else derived from NumericalError to exit code 3.
class OuflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration, bad CLI arguments, violated preconditions.
class ConfigError : public OuflowError {
public:
    using OuflowError::OuflowError;
};

class NumericalError : public OuflowError {
public:
    using OuflowError::OuflowError;
};

/// A coefficient signal produced a non-finite value.
class CoefficientError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Step-doubling or panel-doubling refinement did not reach tolerance.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Cholesky of the Gram matrix failed; carries the small-gap fallback
/// Q ~ (t-s)*Id so callers can decide whether to proceed with it.
class NearSingularGramError : public NumericalError {
public:
    NearSingularGramError(const std::string& what, Eigen::MatrixXd fallback)
        : NumericalError(what), fallback_(std::move(fallback)) {}
    const Eigen::MatrixXd& fallback() const { return fallback_; }

private:
    Eigen::MatrixXd fallback_;
};

/// Field data does not decay inside the periodic box, or the affine image
/// of its support escapes the box.
class DomainTruncationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Picard iterate exceeded the blow-up guard.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Picard iteration failed to contract within the iteration budget.
class NonContractionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Decay-study fit window too short or fit quality below threshold.
class FitQualityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace ouflow

#endif
