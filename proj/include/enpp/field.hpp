#pragma once

#include <functional>
#include <vector>

#include "enpp/grid.hpp"

namespace enpp {

// Scalar samples on the full (z, theta) grid. Fields combine arithmetically
// only when they share the identical Grid object.
struct Field {
    GridPtr grid;
    std::vector<double> v;

    Field() = default;
    explicit Field(GridPtr g) : grid(std::move(g)), v(grid->size(), 0.0) {}

    double& at(std::size_t iz, std::size_t it) { return v[grid->index(iz, it)]; }
    double at(std::size_t iz, std::size_t it) const { return v[grid->index(iz, it)]; }

    bool is_finite() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field pointwise_mul(const Field& a, const Field& b);

// Samples fn(z, theta) on the grid.
Field sample(const GridPtr& g, const std::function<double(double, double)>& fn);

// Scalar samples along z only (theta-integrated or purely radial data).
struct RadialFunction {
    GridPtr grid;
    std::vector<double> v;

    RadialFunction() = default;
    explicit RadialFunction(GridPtr g) : grid(std::move(g)), v(grid->nz(), 0.0) {}

    bool is_finite() const;
};

// Broadcast a radial function to a full Field (constant in theta).
Field broadcast(const RadialFunction& r);

// Quadrature of a radial function over the z range (trapezoid in log z).
double integrate_z(const RadialFunction& f);

// Per-node theta integral of a field; returns the resulting radial function.
RadialFunction integrate_theta(const Field& f);

void require_same_grid(const Field& a, const Field& b);

} // namespace enpp
