#pragma once

#include <cstddef>

#include "enpp/grid.hpp"

namespace enpp::kernels {

// Low-level grid kernels. Every kernel exists twice: a plain serial loop
// (namespace serial) kept as the reference implementation, and an OpenMP
// version (namespace par). The dispatch functions at the bottom call the
// parallel flavor; without OpenMP they compile to the same serial loops.
//
// Reductions are structured deterministically: each z-row is reduced
// serially by one thread and the per-row results are combined in index
// order, so serial and parallel flavors agree bit for bit and the output
// does not depend on the thread count.

namespace serial {

// out = d f / d(log z) along z for every theta column (4th order).
void dlogz(const Grid& g, const double* f, double* out);

// out = d f / d(theta) along theta for every z row (4th order, Fornberg).
void dtheta(const Grid& g, const double* f, double* out);

// row_out[iz] = sum_j f(iz,j) * kernel_theta[j]  (kernel includes quadrature
// weights; one value per z node).
void theta_moment(const Grid& g, const double* f, const double* kernel_theta,
                  double* row_out);

// Full weighted quadrature  sum_ij f_ij g_ij zf[i] tf[j].
double quad_sum(const Grid& g, const double* f, const double* gfield,
                const double* zfactor, const double* tfactor);

// out_ij = a_ij * b_ij * s  +  c_ij * t   (c may be null).
void mul_add(const Grid& g, const double* a, const double* b, double s,
             const double* c, double t, double* out);

} // namespace serial

namespace par {

void dlogz(const Grid& g, const double* f, double* out);
void dtheta(const Grid& g, const double* f, double* out);
void theta_moment(const Grid& g, const double* f, const double* kernel_theta,
                  double* row_out);
double quad_sum(const Grid& g, const double* f, const double* gfield,
                const double* zfactor, const double* tfactor);
void mul_add(const Grid& g, const double* a, const double* b, double s,
             const double* c, double t, double* out);

} // namespace par

inline void dlogz(const Grid& g, const double* f, double* out) { par::dlogz(g, f, out); }
inline void dtheta(const Grid& g, const double* f, double* out) { par::dtheta(g, f, out); }
inline void theta_moment(const Grid& g, const double* f, const double* kt, double* out) {
    par::theta_moment(g, f, kt, out);
}
inline double quad_sum(const Grid& g, const double* f, const double* gf,
                       const double* zf, const double* tf) {
    return par::quad_sum(g, f, gf, zf, tf);
}
inline void mul_add(const Grid& g, const double* a, const double* b, double s,
                    const double* c, double t, double* out) {
    par::mul_add(g, a, b, s, c, t, out);
}

// Reverse cumulative integral in log z of per-row values m[i] (serial; O(nz)):
//   out[i] = int_{t_i}^{t_max} m dt + tail,
// 4-point cubic segment rule, O(dt^4).
void reverse_cumulative_logz(const Grid& g, const double* m, double tail, double* out);

} // namespace enpp::kernels
