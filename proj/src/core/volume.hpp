#pragma once

#include <functional>

#include "core/error.hpp"

namespace twistdeform {

/* Total volume of the deformed sphere family:
 * V(0) = pi, V(lambda) = (pi/lambda) log|(2+lambda)/(2-lambda)|.
 * Defined for all |lambda| != 2; Domain error at the poles.  The chart
 * density is positive only for |lambda| < 2, so values beyond that are a
 * formal extension. */
double closed_volume(double lambda);

/* closed_volume(lambda) / pi; k(0) = 1, k(1) = log 3. */
double k_lambda(double lambda);

struct RadialIntegral {
    double value = 0.0;
    long long nodes = 0;
    double error_estimate = 0.0;
};

/* pi * integral_0^inf density_of_u(u) du for a radial density on R^2
 * (u = r^2), compactified by u = tan(theta) and integrated adaptively.
 * Numeric error when the node budget is exhausted before convergence. */
RadialIntegral integrate_radial_density(
    const std::function<double(double)>& density_of_u,
    long long node_budget = 10000);

struct VolumeResult {
    double lambda = 0.0;
    double numeric = 0.0;
    double closed = 0.0;
    double k = 0.0;
    double rel_error = 0.0;
    long long nodes = 0;
};

/* Integrates the deformed density 1 / ((1+lambda/2) u^2 + 2u + (1-lambda/2))
 * and compares against closed_volume.  Requires |lambda| < 2 so the density
 * stays positive on the chart. */
VolumeResult numeric_volume(double lambda, long long node_budget = 10000);

}  // namespace twistdeform
