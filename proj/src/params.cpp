#include "enpp/params.hpp"

#include <cmath>
#include <vector>

#include "enpp/grid.hpp"

namespace enpp {

namespace {

double angular_c(double alpha) {
    // c = int_0^{pi/2} (sin t cos^2 t)^(1 + alpha/3) * 3 dt.
    // The integrand has a fractional-power zero at both ends; 2048 Gauss
    // nodes push the quadrature error to ~1e-13 relative, well inside the
    // 1e-10 contract.
    std::vector<double> x, w;
    gauss_legendre(2048, 0.0, std::asin(1.0) /* pi/2 */, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double si = std::sin(x[i]);
        double co = std::cos(x[i]);
        s += w[i] * 3.0 * std::pow(si * co * co, 1.0 + alpha / 3.0);
    }
    return s;
}

} // namespace

Parameters make_parameters(double alpha, double delta, int k) {
    if (!(alpha > 0.0) || alpha > 0.2)
        throw std::invalid_argument("make_parameters: alpha must lie in (0, 0.2]");
    if (delta < 0.0 || delta >= 1.0)
        throw std::invalid_argument("make_parameters: delta must lie in [0, 1)");
    if (k < 0)
        throw std::invalid_argument("make_parameters: k must be >= 0");

    Parameters p;
    p.alpha = alpha;
    p.delta = delta;
    p.k = k;
    p.eta = 0.99;
    p.gamma = 1.0 + alpha / 10.0;
    p.beta = (std::sqrt(21.0) - 5.0) / (2.0 * alpha);
    p.c = angular_c(alpha);
    return p;
}

} // namespace enpp
