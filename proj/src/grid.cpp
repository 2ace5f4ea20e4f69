#include "enpp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace enpp {

void gauss_legendre(std::size_t n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const std::size_t m = (n + 1) / 2;
    const double pi = 4.0 * std::atan(1.0);
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / double(j);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    // Map [-1,1] -> [a,b], ascending.
    std::sort(nodes.begin(), nodes.end());
    const double c1 = 0.5 * (b - a), c0 = 0.5 * (b + a);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = c0 + c1 * nodes[i];
        weights[i] *= c1;
    }
}

void fd_weights(double x0, const double* xs, std::size_t n, int m, double* w) {
    // Fornberg 1988, weights for derivatives 0..m at x0 from nodes xs[0..n).
    std::vector<double> c(n * (m + 1), 0.0);
    auto C = [&](std::size_t i, int j) -> double& { return c[i * (m + 1) + j]; };
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    C(0, 0) = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        int mn = int(std::min<std::size_t>(i, std::size_t(m)));
        double c2 = 1.0;
        double c5 = c4;
        c4 = xs[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int s = mn; s >= 1; --s)
                    C(i, s) = c1 * (s * C(i - 1, s - 1) - c5 * C(i - 1, s)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int s = mn; s >= 1; --s)
                C(j, s) = (c4 * C(j, s) - s * C(j, s - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = C(i, m);
}

Grid::Grid(double z_min, double z_max, std::size_t nz, std::size_t ntheta) {
    const double pi = 4.0 * std::atan(1.0);

    z_.resize(nz);
    dlog_ = (std::log(z_max) - std::log(z_min)) / double(nz - 1);
    for (std::size_t i = 0; i < nz; ++i)
        z_[i] = std::exp(std::log(z_min) + dlog_ * double(i));
    z_.front() = z_min;
    z_.back() = z_max;

    // Trapezoid weights in t = log z converted to dz measure (dz = z dt).
    wz_.resize(nz);
    for (std::size_t i = 0; i < nz; ++i)
        wz_[i] = z_[i] * dlog_ * ((i == 0 || i == nz - 1) ? 0.5 : 1.0);

    gauss_legendre(ntheta, 0.0, pi / 2.0, theta_, wtheta_);

    // 5-point stencil tables (only when the direction can host them;
    // derivative operators reject smaller grids).
    if (nz < 5 || ntheta < 5) return;
    st_logz_.resize(nz);
    for (std::size_t i = 0; i < nz; ++i) {
        std::size_t base = (i < 2) ? 0 : (i + 2 >= nz ? nz - 5 : i - 2);
        double xs[5], x0 = dlog_ * double(i);
        for (int s = 0; s < 5; ++s) xs[s] = dlog_ * double(base + s);
        st_logz_[i].base = base;
        fd_weights(x0, xs, 5, 1, st_logz_[i].w);
    }
    st_theta_.resize(ntheta);
    for (std::size_t j = 0; j < ntheta; ++j) {
        std::size_t base = (j < 2) ? 0 : (j + 2 >= ntheta ? ntheta - 5 : j - 2);
        st_theta_[j].base = base;
        fd_weights(theta_[j], theta_.data() + base, 5, 1, st_theta_[j].w);
    }
}

GridPtr make_grid(double z_min, double z_max, std::size_t nz, std::size_t ntheta) {
    if (!(z_min > 0.0) || !(z_min < 1.0) || !(z_max > 1.0) || !(z_min < z_max))
        throw std::invalid_argument("make_grid: need 0 < z_min < 1 < z_max");
    if (nz < 8 || ntheta < 8)
        throw std::invalid_argument("make_grid: need nz, ntheta >= 8");
    return std::make_shared<Grid>(z_min, z_max, nz, ntheta);
}

} // namespace enpp
