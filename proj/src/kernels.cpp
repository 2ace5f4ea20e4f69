#include "enpp/kernels.hpp"

#include <vector>

namespace enpp::kernels {

// ---------------------------------------------------------------- serial

namespace serial {

void dlogz(const Grid& g, const double* f, double* out) {
    const std::size_t nz = g.nz(), nt = g.ntheta();
    for (std::size_t i = 0; i < nz; ++i) {
        const auto& st = g.logz_stencil(i);
        for (std::size_t j = 0; j < nt; ++j) {
            double acc = 0.0;
            for (int s = 0; s < 5; ++s)
                acc += st.w[s] * f[(st.base + s) * nt + j];
            out[i * nt + j] = acc;
        }
    }
}

void dtheta(const Grid& g, const double* f, double* out) {
    const std::size_t nz = g.nz(), nt = g.ntheta();
    for (std::size_t i = 0; i < nz; ++i) {
        const double* row = f + i * nt;
        double* orow = out + i * nt;
        for (std::size_t j = 0; j < nt; ++j) {
            const auto& st = g.theta_stencil(j);
            double acc = 0.0;
            for (int s = 0; s < 5; ++s)
                acc += st.w[s] * row[st.base + s];
            orow[j] = acc;
        }
    }
}

void theta_moment(const Grid& g, const double* f, const double* kt, double* row_out) {
    const std::size_t nz = g.nz(), nt = g.ntheta();
    for (std::size_t i = 0; i < nz; ++i) {
        const double* row = f + i * nt;
        double acc = 0.0;
        for (std::size_t j = 0; j < nt; ++j) acc += row[j] * kt[j];
        row_out[i] = acc;
    }
}

double quad_sum(const Grid& g, const double* f, const double* gf,
                const double* zf, const double* tf) {
    const std::size_t nz = g.nz(), nt = g.ntheta();
    std::vector<double> rows(nz);
    for (std::size_t i = 0; i < nz; ++i) {
        const double* fr = f + i * nt;
        const double* gr = gf + i * nt;
        double acc = 0.0;
        for (std::size_t j = 0; j < nt; ++j) acc += fr[j] * gr[j] * tf[j];
        rows[i] = acc * zf[i];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < nz; ++i) total += rows[i];
    return total;
}

void mul_add(const Grid& g, const double* a, const double* b, double s,
             const double* c, double t, double* out) {
    const std::size_t n = g.size();
    if (c) {
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] * s + c[i] * t;
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] * s;
    }
}

} // namespace serial

// ---------------------------------------------------------------- OpenMP

namespace par {

void dlogz(const Grid& g, const double* f, double* out) {
    const long nz = long(g.nz()), nt = long(g.ntheta());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nz; ++i) {
        const auto& st = g.logz_stencil(std::size_t(i));
        for (long j = 0; j < nt; ++j) {
            double acc = 0.0;
            for (int s = 0; s < 5; ++s)
                acc += st.w[s] * f[(st.base + std::size_t(s)) * std::size_t(nt) + std::size_t(j)];
            out[i * nt + j] = acc;
        }
    }
}

void dtheta(const Grid& g, const double* f, double* out) {
    const long nz = long(g.nz()), nt = long(g.ntheta());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nz; ++i) {
        const double* row = f + i * nt;
        double* orow = out + i * nt;
        for (long j = 0; j < nt; ++j) {
            const auto& st = g.theta_stencil(std::size_t(j));
            double acc = 0.0;
            for (int s = 0; s < 5; ++s)
                acc += st.w[s] * row[st.base + std::size_t(s)];
            orow[j] = acc;
        }
    }
}

void theta_moment(const Grid& g, const double* f, const double* kt, double* row_out) {
    const long nz = long(g.nz()), nt = long(g.ntheta());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nz; ++i) {
        const double* row = f + i * nt;
        double acc = 0.0;
        for (long j = 0; j < nt; ++j) acc += row[j] * kt[j];
        row_out[i] = acc;
    }
}

double quad_sum(const Grid& g, const double* f, const double* gf,
                const double* zf, const double* tf) {
    const long nz = long(g.nz()), nt = long(g.ntheta());
    std::vector<double> rows(static_cast<std::size_t>(nz));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nz; ++i) {
        const double* fr = f + i * nt;
        const double* gr = gf + i * nt;
        double acc = 0.0;
        for (long j = 0; j < nt; ++j) acc += fr[j] * gr[j] * tf[j];
        rows[std::size_t(i)] = acc * zf[i];
    }
    // Rows are combined in index order so the result is thread-count
    // independent.
    double total = 0.0;
    for (long i = 0; i < nz; ++i) total += rows[std::size_t(i)];
    return total;
}

void mul_add(const Grid& g, const double* a, const double* b, double s,
             const double* c, double t, double* out) {
    const long n = long(g.size());
    if (c) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) out[i] = a[i] * b[i] * s + c[i] * t;
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) out[i] = a[i] * b[i] * s;
    }
}

} // namespace par

void reverse_cumulative_logz(const Grid& g, const double* m, double tail, double* out) {
    const std::size_t nz = g.nz();
    const double h = g.dlog();
    // Segment integrals int_{t_i}^{t_i+1} by a cubic through 4 neighbors.
    auto segment = [&](std::size_t i) {
        if (i == 0)
            return h * (9.0 * m[0] + 19.0 * m[1] - 5.0 * m[2] + m[3]) / 24.0;
        if (i + 2 >= nz)
            return h * (m[nz - 4] - 5.0 * m[nz - 3] + 19.0 * m[nz - 2] + 9.0 * m[nz - 1]) / 24.0;
        return h * (-m[i - 1] + 13.0 * m[i] + 13.0 * m[i + 1] - m[i + 2]) / 24.0;
    };
    out[nz - 1] = tail;
    for (std::size_t i = nz - 1; i-- > 0;)
        out[i] = out[i + 1] + segment(i);
}

} // namespace enpp::kernels
