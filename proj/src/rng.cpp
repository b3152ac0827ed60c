#include "records/rng.hpp"

#include <cmath>

namespace records {

namespace {

// Product-of-uniforms inversion, exact for small means.
std::uint64_t poisson_small(Rng& rng, double mean) {
    const double limit = std::exp(-mean);
    double prod = rng.unit_open();
    std::uint64_t k = 0;
    while (prod > limit) {
        prod *= rng.unit_open();
        ++k;
    }
    return k;
}

// Transformed rejection with squeeze (Hoermann's PTRS), exact for mean >= 10.
std::uint64_t poisson_ptrs(Rng& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.unit_open() - 0.5;
        const double v = rng.unit_open();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -mean + kf * loglam - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace

std::uint64_t Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) return poisson_small(*this, mean);
    return poisson_ptrs(*this, mean);
}

}  // namespace records
