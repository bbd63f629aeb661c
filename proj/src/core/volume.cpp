#include "core/volume.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace twistdeform {

namespace {

void check_pole(double lambda) {
    if (std::abs(lambda) == 2.0) {
        std::ostringstream os;
        os << "closed form has a pole at lambda = " << lambda;
        throw Error(ErrorCode::Domain, os.str());
    }
}

void check_positivity(double lambda) {
    if (!(std::abs(lambda) < 2.0)) {
        std::ostringstream os;
        os << "volume undefined at lambda = " << lambda
           << " (density loses positivity at |lambda| = 2)";
        throw Error(ErrorCode::Domain, os.str());
    }
}

}  // namespace

double closed_volume(double lambda) {
    check_pole(lambda);
    if (lambda == 0.0) return M_PI;
    /* (2+l)/(2-l) = 1 + 2l/(2-l); the log1p branch (|lambda| < 2) keeps
     * full precision as lambda -> 0, where the plain quotient rounds to 1. */
    double u = 2.0 * lambda / (2.0 - lambda);
    double logterm = u > -1.0
                         ? std::log1p(u)
                         : std::log(std::abs((2.0 + lambda) / (2.0 - lambda)));
    return M_PI / lambda * logterm;
}

double k_lambda(double lambda) { return closed_volume(lambda) / M_PI; }

RadialIntegral integrate_radial_density(
    const std::function<double(double)>& density_of_u, long long node_budget) {
    if (node_budget < 15)
        throw Error(ErrorCode::InvalidArgument, "node budget too small");
    /* GK15 bisection: depth d costs at most 15 * 2^d evaluations. */
    int max_depth = 0;
    while ((15LL << (max_depth + 1)) <= node_budget && max_depth < 20)
        ++max_depth;

    RadialIntegral out;
    auto integrand = [&](double theta) {
        double c = std::cos(theta);
        double u = std::tan(theta);
        ++out.nodes;
        return density_of_u(u) / (c * c);
    };
    double error = 0.0;
    out.value = M_PI * boost::math::quadrature::gauss_kronrod<double, 15>::
                           integrate(integrand, 0.0, M_PI / 2.0, max_depth,
                                     1e-12, &error);
    out.error_estimate = M_PI * error;
    double tol = std::max(1e-12, 1e-9 * std::abs(out.value));
    if (!(out.error_estimate < tol)) {
        std::ostringstream os;
        os << "quadrature did not converge: estimate " << out.error_estimate
           << " after " << out.nodes << " nodes (budget " << node_budget << ")";
        throw Error(ErrorCode::Numeric, os.str());
    }
    return out;
}

VolumeResult numeric_volume(double lambda, long long node_budget) {
    check_positivity(lambda);
    auto density = [lambda](double u) {
        return 1.0 /
               ((1.0 + lambda / 2.0) * u * u + 2.0 * u + (1.0 - lambda / 2.0));
    };
    RadialIntegral integral = integrate_radial_density(density, node_budget);
    VolumeResult res;
    res.lambda = lambda;
    res.numeric = integral.value;
    res.closed = closed_volume(lambda);
    res.k = res.closed / M_PI;
    res.rel_error = std::abs(res.numeric - res.closed) / std::abs(res.closed);
    res.nodes = integral.nodes;
    return res;
}

}  // namespace twistdeform
