// Serial vs OpenMP timing of the grid kernels. Each kernel runs enough
// repetitions to make timer noise irrelevant; the parity of the two
// flavors is asserted bit-for-bit before timing.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "enpp/field.hpp"
#include "enpp/kernels.hpp"
#include "enpp/profiles.hpp"
#include "enpp/testfields.hpp"

using h_clock = std::chrono::high_resolution_clock;

namespace {

double seconds_per_call(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    auto t0 = h_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = h_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial loops\n");
#endif

    for (auto [nz, nt] : {std::pair<std::size_t, std::size_t>{512, 128},
                          std::pair<std::size_t, std::size_t>{1024, 256}}) {
        auto grid = enpp::make_grid(1e-2, 1e4, nz, nt);
        enpp::Field f = enpp::random_test_field(grid, 42);
        enpp::Field g = enpp::random_test_field(grid, 43);
        std::vector<double> out_s(grid->size()), out_p(grid->size());
        std::vector<double> row_s(grid->nz()), row_p(grid->nz());
        std::vector<double> kt(grid->ntheta());
        for (std::size_t j = 0; j < grid->ntheta(); ++j)
            kt[j] = enpp::k_profile(grid->theta(j)) * grid->theta_weight(j);
        std::vector<double> zf(grid->z_weights()), tf(grid->theta_weights());

        const int reps = nz > 512 ? 20 : 50;
        std::printf("\ngrid %zu x %zu (%d reps)\n", nz, nt, reps);
        std::printf("%-16s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

        auto report = [&](const char* name, double ts, double tp, bool same) {
            std::printf("%-16s %12.3f %12.3f %7.2fx%s\n", name, ts * 1e3, tp * 1e3,
                        ts / tp, same ? "" : "  MISMATCH");
        };

        {
            double ts = seconds_per_call(
                [&] { enpp::kernels::serial::dlogz(*grid, f.v.data(), out_s.data()); }, reps);
            double tp = seconds_per_call(
                [&] { enpp::kernels::par::dlogz(*grid, f.v.data(), out_p.data()); }, reps);
            report("dlogz", ts, tp,
                   std::memcmp(out_s.data(), out_p.data(), out_s.size() * 8) == 0);
        }
        {
            double ts = seconds_per_call(
                [&] { enpp::kernels::serial::dtheta(*grid, f.v.data(), out_s.data()); }, reps);
            double tp = seconds_per_call(
                [&] { enpp::kernels::par::dtheta(*grid, f.v.data(), out_p.data()); }, reps);
            report("dtheta", ts, tp,
                   std::memcmp(out_s.data(), out_p.data(), out_s.size() * 8) == 0);
        }
        {
            double ts = seconds_per_call(
                [&] { enpp::kernels::serial::theta_moment(*grid, f.v.data(), kt.data(), row_s.data()); },
                reps);
            double tp = seconds_per_call(
                [&] { enpp::kernels::par::theta_moment(*grid, f.v.data(), kt.data(), row_p.data()); },
                reps);
            report("theta_moment", ts, tp,
                   std::memcmp(row_s.data(), row_p.data(), row_s.size() * 8) == 0);
        }
        {
            volatile double sink_s = 0, sink_p = 0;
            double ts = seconds_per_call(
                [&] {
                    sink_s = enpp::kernels::serial::quad_sum(*grid, f.v.data(), g.v.data(),
                                                             zf.data(), tf.data());
                },
                reps);
            double tp = seconds_per_call(
                [&] {
                    sink_p = enpp::kernels::par::quad_sum(*grid, f.v.data(), g.v.data(),
                                                          zf.data(), tf.data());
                },
                reps);
            report("quad_sum", ts, tp, sink_s == sink_p);
        }
        {
            double ts = seconds_per_call(
                [&] {
                    enpp::kernels::serial::mul_add(*grid, f.v.data(), g.v.data(), 2.0,
                                                   f.v.data(), -1.0, out_s.data());
                },
                reps);
            double tp = seconds_per_call(
                [&] {
                    enpp::kernels::par::mul_add(*grid, f.v.data(), g.v.data(), 2.0,
                                                f.v.data(), -1.0, out_p.data());
                },
                reps);
            report("mul_add", ts, tp,
                   std::memcmp(out_s.data(), out_p.data(), out_s.size() * 8) == 0);
        }
    }
    return 0;
}
