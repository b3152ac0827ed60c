#include "doctest.h"

#include <cmath>
#include <map>

#include "records/rng.hpp"
#include "support/stat_utils.hpp"

using records::Rng;

TEST_CASE("engine and child streams are deterministic") {
    Rng a(99), b(99);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(records::child_seed(1, 0) != records::child_seed(1, 1));
    CHECK(records::child_seed(1, 0) != records::child_seed(2, 0));
    CHECK(records::child_seed(5, 7) == records::child_seed(5, 7));
}

TEST_CASE("uniform and exponential moments") {
    Rng rng(31337);
    const int n = 200000;
    double su = 0, su2 = 0, se = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.unit();
        su += u;
        su2 += u * u;
        se += rng.exponential();
        const double uo = rng.unit_open();
        CHECK(uo > 0.0);
        CHECK(uo < 1.0);
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(su2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
    CHECK(se / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("gumbel draws match the closed-form law") {
    Rng rng(4242);
    const int n = 400000;
    int below_median = 0, below_zero = 0;
    double sum_exp_neg = 0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gumbel();
        if (g <= -std::log(std::log(2.0))) ++below_median;
        if (g <= 0.0) ++below_zero;
        sum_exp_neg += std::exp(-g);
    }
    const double se_half = std::sqrt(0.25 / n);
    CHECK(std::fabs(below_median / static_cast<double>(n) - 0.5) < 3 * se_half);
    const double p0 = std::exp(-1.0);
    CHECK(std::fabs(below_zero / static_cast<double>(n) - p0) <
          3 * std::sqrt(p0 * (1 - p0) / n));
    // exp(-G) is Exponential(1): mean 1, sd 1.
    CHECK(std::fabs(sum_exp_neg / n - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("poisson sampler matches exact pmf, small mean") {
    Rng rng(777);
    const double lam = 3.2;
    const int n = 200000;
    std::map<std::uint32_t, std::uint64_t> hist;
    for (int i = 0; i < n; ++i) ++hist[static_cast<std::uint32_t>(rng.poisson(lam))];
    // Exact pmf comparison bin by bin at 4 sigma.
    double p = std::exp(-lam);
    for (std::uint32_t k = 0; k <= 12; ++k) {
        const double obs = hist.count(k) ? static_cast<double>(hist[k]) / n : 0.0;
        CHECK(std::fabs(obs - p) < 4 * std::sqrt(p * (1 - p) / n) + 1e-12);
        p *= lam / (k + 1);
    }
}

TEST_CASE("poisson sampler matches exact law, large mean") {
    Rng rng(778);
    const double lam = 5000.5;
    const int n = 150000;
    double s = 0, s2 = 0;
    std::map<std::uint32_t, std::uint64_t> hist;
    for (int i = 0; i < n; ++i) {
        const double k = static_cast<double>(rng.poisson(lam));
        s += k;
        s2 += k * k;
        ++hist[static_cast<std::uint32_t>(k)];
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean - lam) < 4 * std::sqrt(lam / n));
    CHECK(var == doctest::Approx(lam).epsilon(0.03));
    // CDF spot checks vs the exact law: P(X <= lam + c sqrt(lam)).
    for (const double c : {-1.0, 0.0, 1.0}) {
        const std::uint32_t cut = static_cast<std::uint32_t>(lam + c * std::sqrt(lam));
        double cdf_exact = testutil::reg_lower_gamma(cut + 1.0, lam);
        cdf_exact = 1.0 - cdf_exact;  // P(X <= cut) = Q(cut+1, lam) complement identity
        double obs = 0;
        for (const auto& [k, cnt] : hist) {
            if (k <= cut) obs += static_cast<double>(cnt);
        }
        obs /= n;
        CHECK(std::fabs(obs - cdf_exact) < 4 * std::sqrt(0.25 / n) + 1e-9);
    }
}
