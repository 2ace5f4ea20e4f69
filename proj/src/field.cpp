#include "enpp/field.hpp"

#include <cmath>
#include <stdexcept>

#include "enpp/kernels.hpp"

namespace enpp {

void require_same_grid(const Field& a, const Field& b) {
    if (a.grid.get() != b.grid.get())
        throw std::invalid_argument("fields live on different grids");
}

bool Field::is_finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool RadialFunction::is_finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& x : v) x *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { a += b; return a; }
Field operator-(Field a, const Field& b) { a -= b; return a; }
Field operator*(double s, Field a) { a *= s; return a; }

Field pointwise_mul(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(a.grid);
    kernels::mul_add(*a.grid, a.v.data(), b.v.data(), 1.0, nullptr, 0.0, out.v.data());
    return out;
}

Field sample(const GridPtr& g, const std::function<double(double, double)>& fn) {
    Field f(g);
    for (std::size_t i = 0; i < g->nz(); ++i)
        for (std::size_t j = 0; j < g->ntheta(); ++j)
            f.at(i, j) = fn(g->z(i), g->theta(j));
    return f;
}

Field broadcast(const RadialFunction& r) {
    Field f(r.grid);
    for (std::size_t i = 0; i < r.grid->nz(); ++i)
        for (std::size_t j = 0; j < r.grid->ntheta(); ++j)
            f.at(i, j) = r.v[i];
    return f;
}

double integrate_z(const RadialFunction& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid->nz(); ++i)
        s += f.grid->z_weight(i) * f.v[i];
    return s;
}

RadialFunction integrate_theta(const Field& f) {
    RadialFunction out(f.grid);
    kernels::theta_moment(*f.grid, f.v.data(), f.grid->theta_weights().data(), out.v.data());
    return out;
}

} // namespace enpp
