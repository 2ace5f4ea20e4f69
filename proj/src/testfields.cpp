#include "enpp/testfields.hpp"

#include <cmath>

#include "enpp/norms.hpp"

namespace enpp {

Field random_test_field(const GridPtr& g, std::uint64_t seed,
                        const FieldFamilyOptions& opt) {
    SplitMix64 rng(seed);
    Field f(g);

    const double t0 = std::log(g->z(0));
    const double t1 = std::log(g->z(g->nz() - 1));
    const double tc = 0.5 * (t0 + t1);
    const double tw = 0.30 * (t1 - t0);

    for (int term = 0; term < opt.terms; ++term) {
        const double a = rng.uniform(-1.0, 1.0);
        const int pp = rng.uniform_int(opt.p_min, opt.p_min + opt.p_spread);
        const int qq = pp + rng.uniform_int(opt.q_extra_min,
                                            opt.q_extra_min + opt.q_extra_spread);
        const int mm = rng.uniform_int(opt.m_min, opt.m_min + opt.m_spread);
        const double om = rng.uniform(0.4, 1.2);
        const double ph = rng.uniform(0.0, 6.283185307179586);
        const double bb = rng.uniform(0.0, 0.5);

        for (std::size_t i = 0; i < g->nz(); ++i) {
            const double z = g->z(i);
            const double t = std::log(z);
            double radial = std::pow(z / (1.0 + z), pp) *
                            std::pow(1.0 + z, double(pp - qq)) *
                            (1.0 + bb * std::sin(om * t + ph));
            if (opt.compact) {
                const double s = (t - tc) / tw;
                radial *= (std::abs(s) < 1.0) ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
            }
            for (std::size_t j = 0; j < g->ntheta(); ++j) {
                const double ang = std::pow(std::sin(2.0 * g->theta(j)), mm);
                f.at(i, j) += a * radial * ang;
            }
        }
    }

    const double n = flat_l2(f);
    if (n > 0.0) f *= 1.0 / n;
    return f;
}

} // namespace enpp
