#pragma once

#include <functional>

#include "forge/errors.hpp"

namespace forge {

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth = 40);

}  // namespace forge
