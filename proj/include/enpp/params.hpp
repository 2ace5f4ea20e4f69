#pragma once

#include <stdexcept>

namespace enpp {

// Scalar constants of the model. All operators and profiles read from here.
//
//   eta   = 99/100                 (radial-weight exponent)
//   gamma = 1 + alpha/10           (mixed-weight exponent)
//   beta  = (sqrt(21) - 5)/(2 a)   (radial decay exponent of the explicit
//                                   electrostatic solution; alpha*beta is
//                                   alpha-independent)
//   c     = int_0^{pi/2} Gamma(t) K(t) dt,  Gamma = (sin t cos^2 t)^(a/3),
//                                           K = 3 sin t cos^2 t
struct Parameters {
    double alpha = 0.05;
    double delta = 0.025;
    double eta = 0.99;
    double gamma = 1.005;
    int k = 0;
    double c = 1.0;
    double beta = 0.0;
};

// Builds Parameters from (alpha, delta, k). Rejects alpha outside (0, 0.2]
// (the asymptotic regime), delta outside [0, 1), and k < 0.
// c is computed by Gauss-Legendre quadrature of Gamma*K with enough nodes
// that the relative error is far below 1e-10.
Parameters make_parameters(double alpha, double delta, int k);

} // namespace enpp
