#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// Base of every error raised by the library.
///
/// Each error carries a short machine-readable code used by the command line
/// frontend (`code,message` diagnostics) and to pick the exit status.
class Error : public std::runtime_error {
public:
    enum class Kind { validation, numerical };

    Error(Kind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    Kind kind_;
    std::string code_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message, std::string code = "domain_error")
        : Error(Kind::validation, std::move(code), message) {}
};

/// Evaluation at a pole (e.g. the gamma function at a non-positive integer).
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& message) : DomainError(message, "pole") {}
};

/// Parameter vector violating a structural constraint; `index` names the offending entry.
class ConstraintError : public DomainError {
public:
    ConstraintError(const std::string& message, std::size_t index)
        : DomainError(message, "constraint_violation"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Inconsistent solver or quadrature configuration.
class ConfigError : public DomainError {
public:
    explicit ConfigError(const std::string& message) : DomainError(message, "config_error") {}
};

/// Result does not fit in a double.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& message)
        : Error(Kind::numerical, "overflow", message) {}
};

/// An internal method failed its own accuracy estimate.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& message, std::string code = "no_convergence")
        : Error(Kind::numerical, std::move(code), message) {}
};

/// Ill-conditioned first-kind Volterra deconvolution.
class InstabilityError : public Error {
public:
    explicit InstabilityError(const std::string& message)
        : Error(Kind::numerical, "deconvolution_instability", message) {}
};

/// Time stepper blew past its overflow guard at step `step`.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& message, std::size_t step)
        : Error(Kind::numerical, "divergence", message), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Per-step nonlinear solve or outer iteration gave up; `residual` is the last residual.
class SolveError : public Error {
public:
    SolveError(const std::string& message, double residual, std::string code = "nonlinear_solve")
        : Error(Kind::numerical, std::move(code), message), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Assembled stiffness matrix is not diagonal to the required tolerance.
class DiagonalityError : public Error {
public:
    DiagonalityError(const std::string& message, double ratio)
        : Error(Kind::numerical, "diagonality_violation", message), ratio_(ratio) {}
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

}  // namespace fraclab
