#pragma once

#include <cstdint>

#include "enpp/field.hpp"

namespace enpp {

// Seeded smooth test fields
//   f = sum_t a_t z^{p_t}/(1+z)^{q_t} sin^{m_t}(2 theta) (1 + b_t sin(w_t log z + phi_t))
// with p >= p_min and q >= p+2, so the weighted norms are finite, the decay
// contract of the nonlocal operator holds, and domain-edge boundary terms of
// the integration-by-parts identities are below quadrature accuracy.
// compact = true multiplies a C^inf bump in log z (support well inside the
// grid), which the commutation tests use. Fields are normalized to unit
// flat L2.
struct FieldFamilyOptions {
    int p_min = 4;
    int p_spread = 2;      // p in [p_min, p_min + p_spread]
    int q_extra_min = 2;   // q = p + q_extra, q_extra in [min, min + spread]
    int q_extra_spread = 2;
    int m_min = 1;
    int m_spread = 2;
    int terms = 3;
    bool compact = false;
};

Field random_test_field(const GridPtr& g, std::uint64_t seed,
                        const FieldFamilyOptions& opt = {});

// Small deterministic generator used everywhere randomness is needed
// (identical streams on every platform).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int a, int b) {  // inclusive
        return a + int(next() % std::uint64_t(b - a + 1));
    }
};

} // namespace enpp
