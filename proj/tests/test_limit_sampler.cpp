#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "records/analytics.hpp"
#include "records/errors.hpp"
#include "records/limit_sampler.hpp"
#include "support/stat_utils.hpp"

using records::LimitConfig;
using records::LimitRealization;
using records::LimitSample;
using records::LimitWorkspace;
using records::Rng;

TEST_CASE("slab mass closed forms and quadrature oracle") {
    CHECK(records::gamma_slab_mass(1, 3.0) == doctest::Approx(std::expm1(3.0)));
    CHECK(records::gamma_slab_mass(2, 10.0) ==
          doctest::Approx(9.0 * std::exp(10.0) + 1.0).epsilon(1e-12));
    CHECK(records::gamma_slab_mass(3, 0.0) == 0.0);
    for (int d : {1, 2, 3, 5}) {
        for (double delta : {0.5, 3.0, 8.0}) {
            double fact = 1.0;
            for (int j = 2; j < d; ++j) fact *= j;
            const double quad = testutil::simpson(
                [&](double y) { return std::pow(y, d - 1) / fact * std::exp(y); }, 0.0, delta,
                4000);
            CHECK(records::gamma_slab_mass(d, delta) == doctest::Approx(quad).epsilon(1e-9));
        }
    }
}

TEST_CASE("truncation budget equals the gamma tail") {
    CHECK(records::tv_truncation_bound(1, 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(records::tv_truncation_bound(2, 10.0) ==
          doctest::Approx(4.9939922738733e-4).epsilon(1e-10));
    CHECK(records::tv_truncation_bound(3, 8.0) ==
          doctest::Approx(0.013753967744)
              .epsilon(1e-9));
    CHECK(records::tv_truncation_bound(4, 0.0) == 1.0);
}

TEST_CASE("default radii") {
    CHECK(records::default_delta(2) == 10.0);
    CHECK(records::default_delta(3) == 8.0);
    CHECK(records::default_delta(4) == 7.0);
}

TEST_CASE("dimension one at fixed level matches the closed form") {
    // Below the reference point the process has a unique maximum, within
    // delta exactly when the interval of mass e^{-g}(e^delta - 1) is hit.
    std::uint64_t case_seed = 52000;
    for (const double g : {-1.0, 0.5, 2.0}) {
        for (const double delta : {1.0, 3.0}) {
            Rng rng(records::mix64(++case_seed));
            LimitWorkspace ws;
            const int n = 40000;
            int ones = 0;
            for (int i = 0; i < n; ++i) {
                const LimitSample s = records::sample_k_g_truncated(1, g, delta, rng, ws);
                CHECK(s.k <= 1);
                CHECK(s.n_external == 0);
                ones += s.k;
            }
            const double expect = 1.0 - std::exp(-std::exp(-g) * std::expm1(delta));
            const double se = std::sqrt(expect * (1 - expect) / n);
            CHECK(std::fabs(ones / static_cast<double>(n) - expect) < 4 * se + 1e-9);
        }
    }
}

TEST_CASE("dimension one mixture: P(k=1) = 1 - e^-delta") {
    for (const double delta : {1.0, 3.0}) {
        LimitConfig cfg;
        cfg.d = 1;
        cfg.delta = delta;
        cfg.samples = 60000;
        cfg.seed = 4600 + static_cast<std::uint64_t>(delta);
        const auto res = records::estimate_limit_law(cfg);
        const double expect = -std::expm1(-delta);
        CHECK(std::fabs(res.law.prob_at(1) - expect) < 3 * res.law.se_at(1) + 1e-9);
        // Deficit at zero equals the truncation budget in expectation.
        CHECK(std::fabs(res.law.prob_at(0) - records::tv_truncation_bound(1, delta)) <
              3 * res.law.se_at(0) + 1e-9);
    }
}

TEST_CASE("draw invariants hold on every sample") {
    for (int d : {2, 3}) {
        LimitConfig cfg;
        cfg.d = d;
        cfg.delta = 4.0;
        cfg.samples = 4000;
        cfg.seed = 99 + d;
        std::vector<LimitSample> draws;
        records::estimate_limit_law(cfg, 0, &draws);
        REQUIRE(draws.size() == cfg.samples);
        for (const LimitSample& s : draws) {
            CHECK(s.k <= s.n_maximal);
            CHECK(s.n_maximal <= s.n_candidates);
            if (s.n_maximal == 0) {
                CHECK(s.n_external == 0);
                CHECK(s.k == 0);
            }
        }
    }
}

TEST_CASE("vanishing slab yields zero") {
    LimitConfig cfg;
    cfg.d = 3;
    cfg.delta = 1e-4;
    cfg.samples = 300;
    cfg.seed = 10;
    const auto res = records::estimate_limit_law(cfg);
    CHECK(res.law.prob_at(0) == doctest::Approx(1.0));
}

TEST_CASE("multi-delta readout") {
    LimitWorkspace ws;
    Rng rng(51);
    LimitRealization real;
    for (int i = 0; i < 200; ++i) {
        const double g = records::sample_gumbel(rng);
        records::sample_k_g_truncated(2, g, 6.0, rng, ws, 5e7, {}, &real);
        const std::vector<double> deltas{1e-9, 1.5, 3.0, 4.5, 6.0};
        const auto counts = records::multi_delta_readout(real, deltas);
        REQUIRE(counts.size() == deltas.size());
        CHECK(counts[0] == 0);
        CHECK(counts.back() == real.sample.k);
        for (std::size_t j = 1; j < counts.size(); ++j) CHECK(counts[j] >= counts[j - 1]);
    }
    CHECK_THROWS_AS(records::multi_delta_readout(real, std::vector<double>{6.5}),
                    std::invalid_argument);
}

TEST_CASE("candidate budget guard") {
    LimitWorkspace ws;
    Rng rng(5);
    bool threw = false;
    try {
        records::sample_k_g_truncated(2, 0.0, 25.0, rng, ws, 5e7);
    } catch (const records::CandidateBudgetError& e) {
        threw = true;
        CHECK(e.expected_candidates() > e.budget());
        CHECK(e.expected_candidates() ==
              doctest::Approx(records::gamma_slab_mass(2, 25.0)).epsilon(1e-12));
    }
    CHECK(threw);
}

TEST_CASE("external killer process matches inclusion-exclusion masses") {
    // Fixed maximal-candidate sets; every union mass has a closed form via
    // coordinate-wise extremes, so the cell construction is checked directly.
    struct Fixture {
        int d;
        double g;
        std::vector<std::vector<double>> offsets;  // ascending coordinate sums
    };
    const std::vector<Fixture> fixtures = {
        {2, 0.8, {{1.1, 0.2}, {0.4, 1.0}}},
        {3, 0.3, {{0.5, 0.4, 0.3}, {0.1, 0.9, 0.5}, {0.9, 0.1, 0.6}}},
    };
    for (const Fixture& fx : fixtures) {
        const int d = fx.d;
        const std::size_t m = fx.offsets.size();
        // Inclusion-exclusion masses of the union of upper regions, of its
        // part above the reference point, and of its part inside the slab.
        double mass_union = 0.0, mass_below = 0.0;
        for (std::uint32_t sub = 1; sub < (1u << m); ++sub) {
            std::vector<double> mn(static_cast<std::size_t>(d),
                                   std::numeric_limits<double>::infinity());
            int bits = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (sub & (1u << i)) {
                    ++bits;
                    for (int j = 0; j < d; ++j) mn[j] = std::min(mn[j], fx.offsets[i][j]);
                }
            }
            const double sign = bits % 2 == 1 ? 1.0 : -1.0;
            double sum_mn = 0.0, prod_expm1 = 1.0;
            for (int j = 0; j < d; ++j) {
                sum_mn += mn[j];
                prod_expm1 *= std::expm1(mn[j]);
            }
            mass_union += sign * std::exp(sum_mn - fx.g);
            mass_below += sign * std::exp(-fx.g) * prod_expm1;
        }
        const double mass_above_x = std::exp(-fx.g);
        const double expected_mean = mass_union - mass_above_x - mass_below;

        // Survival of maximum i is a void probability of the same region
        // family restricted to one upper set.
        std::vector<double> survive(m);
        for (std::size_t i = 0; i < m; ++i) {
            double eta = 0.0, prod = 1.0;
            for (int j = 0; j < d; ++j) {
                eta += fx.offsets[i][j];
                prod *= std::expm1(fx.offsets[i][j]);
            }
            const double mass_i = std::exp(eta - fx.g) - std::exp(-fx.g) * (1.0 + prod);
            survive[i] = std::exp(-mass_i);
        }

        LimitWorkspace ws;
        Rng rng(8600 + d);
        const std::vector<double> x_ref(static_cast<std::size_t>(d), fx.g / d);
        const int reps = 200000;
        double sum = 0.0, sum2 = 0.0;
        std::vector<double> alive_count(m, 0.0);
        for (int r = 0; r < reps; ++r) {
            ws.min_front.clear();
            ws.min_eta.clear();
            for (const auto& off : fx.offsets) {
                ws.min_front.insert(ws.min_front.end(), off.begin(), off.end());
                double eta = 0.0;
                for (double v : off) eta += v;
                ws.min_eta.push_back(eta);
            }
            const std::uint32_t n_ext = records::sample_external_killers(d, fx.g, x_ref, ws, rng);
            sum += n_ext;
            sum2 += static_cast<double>(n_ext) * n_ext;
            for (std::size_t i = 0; i < m; ++i) alive_count[i] += ws.alive[i];
        }
        const double mean = sum / reps;
        const double sd = std::sqrt(std::max(0.0, sum2 / reps - mean * mean));
        CHECK(std::fabs(mean - expected_mean) < 4 * sd / std::sqrt(static_cast<double>(reps)));
        for (std::size_t i = 0; i < m; ++i) {
            const double p = alive_count[i] / reps;
            const double se = std::sqrt(survive[i] * (1 - survive[i]) / reps);
            CHECK(std::fabs(p - survive[i]) < 4 * se + 1e-9);
        }
    }
}

TEST_CASE("mean identity at small radii") {
    // E K(delta-) = 1 - P(Gamma(d) > delta); at small radii the external
    // phase carries real weight, so a bias there would surface.
    struct Case {
        int d;
        double delta;
    };
    for (const Case c : {Case{2, 4.0}, Case{3, 3.0}}) {
        LimitConfig cfg;
        cfg.d = c.d;
        cfg.delta = c.delta;
        cfg.samples = 60000;
        cfg.seed = 7100 + c.d;
        const auto res = records::estimate_limit_law(cfg);
        const double expect = 1.0 - records::tv_truncation_bound(c.d, c.delta);
        CHECK(std::fabs(res.diag.mean_k - expect) < 4 * res.diag.se_mean);
    }
}

TEST_CASE("two-dimensional law approaches the shifted geometric") {
    LimitConfig cfg;
    cfg.d = 2;
    cfg.delta = 6.0;
    cfg.samples = 60000;
    cfg.seed = 2024;
    const auto res = records::estimate_limit_law(cfg);
    const double slack = records::tv_truncation_bound(2, 6.0);
    for (int k = 0; k <= 3; ++k) {
        CHECK(std::fabs(res.law.prob_at(k) - records::analytics::d2_exact_pmf(k)) <
              3 * res.law.se_at(k) + slack);
    }
    CHECK(res.law.tv_budget == doctest::Approx(slack));
}

TEST_CASE("location invariance of the level law") {
    // Replacing the symmetric reference point by any point with the same
    // coordinate sum leaves the law of k unchanged.
    const int d = 3;
    const double g = 1.1, delta = 4.0;
    const std::vector<double> shifted{g / d + 0.8, g / d - 0.8, g / d};
    LimitWorkspace ws;
    Rng r1(61), r2(62);
    std::map<std::uint32_t, std::uint64_t> h1, h2;
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
        ++h1[records::sample_k_g_truncated(d, g, delta, r1, ws).k];
        ++h2[records::sample_k_g_truncated(d, g, delta, r2, ws, 5e7, shifted).k];
    }
    const auto res = testutil::chi2_two_sample(h1, h2);
    REQUIRE(res.df >= 1);
    CHECK(res.statistic < testutil::chi2_quantile(0.99, res.df));
}

TEST_CASE("reference point must match the level") {
    LimitWorkspace ws;
    Rng rng(1);
    const std::vector<double> bad{1.0, 1.0};
    CHECK_THROWS_AS(records::sample_k_g_truncated(2, 1.0, 2.0, rng, ws, 5e7, bad),
                    std::invalid_argument);
}

TEST_CASE("estimate_limit_law is deterministic across worker counts") {
    LimitConfig cfg;
    cfg.d = 2;
    cfg.delta = 5.0;
    cfg.samples = 3000;
    cfg.seed = 777;
    std::vector<LimitSample> draws1, draws4;
    const auto a = records::estimate_limit_law(cfg, 1, &draws1);
    const auto b = records::estimate_limit_law(cfg, 4, &draws4);
    CHECK(a.law.pmf == b.law.pmf);
    CHECK(a.diag.histogram == b.diag.histogram);
    REQUIRE(draws1.size() == draws4.size());
    for (std::size_t i = 0; i < draws1.size(); ++i) {
        CHECK(draws1[i].k == draws4[i].k);
        CHECK(draws1[i].g == draws4[i].g);
        CHECK(draws1[i].n_candidates == draws4[i].n_candidates);
    }
}
