#pragma once

#include <stdexcept>
#include <string>

namespace ocm {

/// Input data failed validation (bad file, empty sample, schema mismatch).
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (quadrature did not converge, sampler
/// efficiency collapsed). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An evaluation point coincided exactly with a pole of the plug-in
/// estimator. Callers may perturb the point and retry.
class PoleError : public NumericalError {
public:
    explicit PoleError(double t)
        : NumericalError("plug-in estimator has a pole at t = " + std::to_string(t)),
          t_(t) {}

    double t() const { return t_; }

private:
    double t_;
};

}  // namespace ocm
