#pragma once

#include <stdexcept>
#include <string>

namespace forge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation outside the expression's domain (z = 0, on the slit, at a pole).
struct DomainError : Error {
    using Error::Error;
};

// Contour operation on an expression that is not single-valued on the circle.
struct MultivaluedError : Error {
    using Error::Error;
};

struct QuadratureNonConvergence : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

// Loop period changed with the probe radius.
struct RadiusDependence : Error {
    using Error::Error;
};

struct DegenerateMap : Error {
    using Error::Error;
};

struct MetricDegenerate : Error {
    using Error::Error;
};

struct DegenerateMetric : Error {
    using Error::Error;
};

struct StepUnderflow : Error {
    using Error::Error;
};

// Re-period of F dG does not vanish around the puncture.
struct ExactnessViolation : Error {
    double re_period = 0.0;
    explicit ExactnessViolation(const std::string& msg, double p)
        : Error(msg), re_period(p) {}
};

struct DegenerateData : Error {
    using Error::Error;
};

struct NullityViolation : Error {
    using Error::Error;
};

struct NotSpacelike : Error {
    using Error::Error;
};

struct DegenerateGaussMap : Error {
    using Error::Error;
};

struct SingularOnDomain : Error {
    using Error::Error;
};

struct RangeViolation : Error {
    using Error::Error;
};

struct IntegrationBlowup : Error {
    using Error::Error;
};

struct CompatibilityResidual : Error {
    using Error::Error;
};

struct GridTooCoarse : Error {
    using Error::Error;
};

struct ModelDomainTooSmall : Error {
    using Error::Error;
};

struct InconclusiveInput : Error {
    using Error::Error;
};

struct ConfigError : Error {
    int line = 0;
    int column = 0;
    ConfigError(const std::string& msg, int l = 0, int c = 0)
        : Error(msg), line(l), column(c) {}
};

}  // namespace forge
