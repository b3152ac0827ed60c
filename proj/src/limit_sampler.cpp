#include "records/limit_sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "records/analytics.hpp"
#include "records/errors.hpp"
#include "records/parallel.hpp"

namespace records {

double default_delta(int d) {
    switch (d) {
        case 1: return 10.0;
        case 2: return 10.0;
        case 3: return 8.0;
        case 4: return 7.0;
        default: return 6.0;
    }
}

double sample_gumbel(Rng& rng) { return rng.gumbel(); }

double gamma_slab_mass(int d, double delta) {
    if (d < 1) throw std::invalid_argument("gamma_slab_mass: d must be >= 1");
    if (delta < 0.0) throw std::invalid_argument("gamma_slab_mass: delta must be >= 0");
    if (delta == 0.0) return 0.0;
    // Positive power series: sum_j delta^{d+j} / ((d-1)! j! (d+j)).
    double lead = 1.0;
    for (int j = 1; j < d; ++j) lead *= delta / j;  // delta^{d-1}/(d-1)!
    double term = lead * delta / d;
    double sum = term;
    for (int j = 0; j < 100000; ++j) {
        term *= delta * (d + j) / ((j + 1.0) * (d + j + 1.0));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

double tv_truncation_bound(int d, double delta) { return analytics::gamma_tail(d, delta); }

namespace {

// LSD radix sort for nonnegative doubles (bit pattern order matches value
// order); falls back to std::sort for short inputs.
void sort_ascending(std::vector<double>& v, LimitWorkspace& ws) {
    const std::size_t n = v.size();
    if (n < 512) {
        std::sort(v.begin(), v.end());
        return;
    }
    ws.sort_tmp.resize(n);
    ws.radix_count.assign(1u << 16, 0);
    double* src = v.data();
    double* dst = ws.sort_tmp.data();
    for (int pass = 0; pass < 4; ++pass) {
        const int shift = pass * 16;
        std::uint32_t* count = ws.radix_count.data();
        if (pass > 0) std::fill_n(count, 1u << 16, 0u);
        for (std::size_t i = 0; i < n; ++i) {
            ++count[(std::bit_cast<std::uint64_t>(src[i]) >> shift) & 0xFFFFu];
        }
        std::uint32_t run = 0;
        for (std::uint32_t b = 0; b < (1u << 16); ++b) {
            const std::uint32_t c = count[b];
            count[b] = run;
            run += c;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto b = (std::bit_cast<std::uint64_t>(src[i]) >> shift) & 0xFFFFu;
            dst[count[b]++] = src[i];
        }
        std::swap(src, dst);
    }
}

// Distance component of one candidate: inverse CDF of the e^eta part with a
// (eta/delta)^{d-1} acceptance step.
inline double draw_eta(Rng& rng, int d, double delta, double expm1_delta) {
    for (;;) {
        const double eta = std::log1p(rng.unit_open() * expm1_delta);
        if (d == 1) return eta;
        const double ratio = eta / delta;
        double acc = ratio;
        for (int j = 2; j < d; ++j) acc *= ratio;
        if (rng.unit_open() <= acc) return eta;
    }
}

// Direction on the probability simplex (normalized exponential spacings;
// the two-dimensional case reduces to a single uniform split).
inline void draw_offset(Rng& rng, int d, double eta, double* delta_out) {
    if (d == 1) {
        delta_out[0] = eta;
        return;
    }
    if (d == 2) {
        const double v = rng.unit_open();
        delta_out[0] = eta * v;
        delta_out[1] = eta * (1.0 - v);
        return;
    }
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
        delta_out[j] = rng.exponential();
        sum += delta_out[j];
    }
    const double scale = eta / sum;
    for (int j = 0; j < d; ++j) delta_out[j] *= scale;
}

inline bool all_less(const double* a, const double* b, int d) {
    for (int j = 0; j < d; ++j) {
        if (!(a[j] < b[j])) return false;
    }
    return true;
}

}  // namespace

std::uint32_t sample_external_killers(int d, double g, std::span<const double> x_ref,
                                      LimitWorkspace& ws, Rng& rng) {
    const std::size_t n_max = ws.min_eta.size();
    ws.m_abs.resize(n_max * d);
    for (std::size_t m = 0; m < n_max; ++m) {
        for (int j = 0; j < d; ++j) ws.m_abs[m * d + j] = x_ref[j] - ws.min_front[m * d + j];
    }
    ws.alive.assign(n_max, 1);
    ws.pt.resize(static_cast<std::size_t>(d));
    std::uint32_t n_external = 0;
    // Cell i realizes the full process above maximum i (mass e^{-m_+}) and
    // keeps only points above none of the earlier maxima, which partitions
    // the union into disjoint first-index cells. Points above the reference
    // point carry no process mass; points below it belong to the slab whose
    // configuration is already realized. Both are rejected exactly.
    for (std::size_t i = 0; i < n_max; ++i) {
        const double cell_mean = std::exp(ws.min_eta[i] - g);
        const std::uint64_t n_pts = rng.poisson(cell_mean);
        for (std::uint64_t t = 0; t < n_pts; ++t) {
            for (int j = 0; j < d; ++j) ws.pt[j] = ws.m_abs[i * d + j] + rng.exponential();
            bool above_x = true, below_x = true;
            for (int j = 0; j < d; ++j) {
                above_x = above_x && ws.pt[j] > x_ref[j];
                below_x = below_x && ws.pt[j] < x_ref[j];
            }
            if (above_x || below_x) continue;
            bool first_cell = true;
            for (std::size_t jm = 0; jm < i && first_cell; ++jm) {
                if (all_less(&ws.m_abs[jm * d], ws.pt.data(), d)) first_cell = false;
            }
            if (!first_cell) continue;
            ++n_external;
            for (std::size_t jm = i; jm < n_max; ++jm) {
                if (ws.alive[jm] && all_less(&ws.m_abs[jm * d], ws.pt.data(), d)) {
                    ws.alive[jm] = 0;
                }
            }
        }
    }
    return n_external;
}

LimitSample sample_k_g_truncated(int d, double g, double delta, Rng& rng, LimitWorkspace& ws,
                                 double max_expected_candidates,
                                 std::span<const double> x_ref,
                                 LimitRealization* realization) {
    if (d < 1) throw std::invalid_argument("sample_k_g_truncated: d must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("sample_k_g_truncated: delta must be > 0");

    if (x_ref.empty()) {
        ws.x_default.assign(static_cast<std::size_t>(d), g / d);
        x_ref = ws.x_default;
    } else {
        if (static_cast<int>(x_ref.size()) != d) {
            throw std::invalid_argument("sample_k_g_truncated: x_ref dimension mismatch");
        }
        double s = 0.0;
        for (double v : x_ref) s += v;
        if (std::fabs(s - g) > 1e-9 * std::max(1.0, std::fabs(g))) {
            throw std::invalid_argument("sample_k_g_truncated: x_ref coordinates must sum to g");
        }
    }

    const double lambda_slab = std::exp(-g) * gamma_slab_mass(d, delta);
    if (!(lambda_slab <= max_expected_candidates)) {
        throw CandidateBudgetError(lambda_slab, max_expected_candidates);
    }

    LimitSample out;
    out.g = g;

    // 1. Candidate distances: N ~ Poisson(slab mass), then i.i.d. draws,
    //    sorted ascending.
    const std::uint64_t n_cand = rng.poisson(lambda_slab);
    out.n_candidates = n_cand;
    const double expm1_delta = std::expm1(delta);
    ws.etas.resize(n_cand);
    for (std::uint64_t i = 0; i < n_cand; ++i) {
        ws.etas[i] = draw_eta(rng, d, delta, expm1_delta);
    }
    sort_ascending(ws.etas, ws);

    // 2. Ascending sweep: a candidate's dominators all have strictly smaller
    //    distance, so the minima frontier only accretes.
    ws.min_front.clear();
    ws.min_eta.clear();
    ws.pt.resize(static_cast<std::size_t>(d));
    for (std::uint64_t i = 0; i < n_cand; ++i) {
        const double eta = ws.etas[i];
        draw_offset(rng, d, eta, ws.pt.data());
        const std::size_t m_cnt = ws.min_eta.size();
        bool dominated = false;
        for (std::size_t m = 0; m < m_cnt; ++m) {
            if (all_less(&ws.min_front[m * d], ws.pt.data(), d)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            ws.min_front.insert(ws.min_front.end(), ws.pt.begin(), ws.pt.end());
            ws.min_eta.push_back(eta);
        }
    }
    const std::size_t n_max = ws.min_eta.size();
    out.n_maximal = static_cast<std::uint32_t>(n_max);

    // 3. External killers outside the slab.
    out.n_external = sample_external_killers(d, g, x_ref, ws, rng);

    std::uint32_t k = 0;
    for (std::size_t m = 0; m < n_max; ++m) k += ws.alive[m];
    out.k = k;

    if (realization) {
        realization->delta = delta;
        realization->sample = out;
        realization->surviving_eta.clear();
        for (std::size_t m = 0; m < n_max; ++m) {
            if (ws.alive[m]) realization->surviving_eta.push_back(ws.min_eta[m]);
        }
        // min_eta is ascending by construction.
    }
    return out;
}

LimitSample sample_k_truncated(const LimitConfig& cfg, Rng& rng, LimitWorkspace& ws,
                               LimitRealization* realization) {
    const double g = sample_gumbel(rng);
    return sample_k_g_truncated(cfg.d, g, cfg.delta, rng, ws, cfg.max_expected_candidates,
                                {}, realization);
}

std::vector<std::uint32_t> multi_delta_readout(const LimitRealization& realization,
                                               std::span<const double> deltas) {
    std::vector<std::uint32_t> out;
    out.reserve(deltas.size());
    for (double dprime : deltas) {
        if (dprime > realization.delta) {
            throw std::invalid_argument("multi_delta_readout: radius exceeds realization radius");
        }
        const auto it = std::upper_bound(realization.surviving_eta.begin(),
                                         realization.surviving_eta.end(), dprime);
        out.push_back(static_cast<std::uint32_t>(it - realization.surviving_eta.begin()));
    }
    return out;
}

LimitLawResult estimate_limit_law(const LimitConfig& cfg, int threads,
                                  std::vector<LimitSample>* per_draw) {
    if (cfg.samples < 1) throw std::invalid_argument("estimate_limit_law: samples must be >= 1");
    const int nthreads = resolve_thread_count(threads);

    struct Acc {
        std::map<std::uint32_t, std::uint64_t> hist;
        std::uint64_t candidates = 0;
        std::uint64_t maximal = 0, external = 0;
    };
    std::vector<Acc> accs(chunk_count(cfg.samples, nthreads));
    if (per_draw) per_draw->assign(cfg.samples, LimitSample{});

    parallel_chunks(cfg.samples, nthreads,
                    [&](std::uint64_t begin, std::uint64_t end, std::uint64_t chunk) {
                        LimitWorkspace ws;
                        Acc& acc = accs[chunk];
                        for (std::uint64_t i = begin; i < end; ++i) {
                            Rng rng(child_seed(cfg.seed, i));
                            const LimitSample s = sample_k_truncated(cfg, rng, ws);
                            ++acc.hist[s.k];
                            acc.candidates += s.n_candidates;
                            acc.maximal += s.n_maximal;
                            acc.external += s.n_external;
                            if (per_draw) (*per_draw)[i] = s;
                        }
                    });

    Acc total;
    for (const Acc& a : accs) {
        for (const auto& [k, c] : a.hist) total.hist[k] += c;
        total.candidates += a.candidates;
        total.maximal += a.maximal;
        total.external += a.external;
    }

    LimitLawResult res;
    res.law = law_from_histogram(total.hist, cfg.samples);
    res.law.d = cfg.d;
    res.law.source = "limit";
    res.law.delta = cfg.delta;
    res.law.tv_budget = tv_truncation_bound(cfg.d, cfg.delta);
    res.law.seed = cfg.seed;

    const double n = static_cast<double>(cfg.samples);
    long double s1 = 0, s2 = 0, s3 = 0;
    for (const auto& [k, c] : total.hist) {
        const long double kk = k, cc = c;
        s1 += cc * kk;
        s2 += cc * kk * kk;
        s3 += cc * kk * kk * kk;
    }
    res.diag.histogram = std::move(total.hist);
    res.diag.mean_k = static_cast<double>(s1) / n;
    const long double var_num = s2 - s1 * s1 / n;
    const double var = static_cast<double>(
        std::max(0.0L, var_num / std::max<long double>(1.0L, n - 1.0)));
    res.diag.se_mean = std::sqrt(var / n);
    res.diag.moment2 = static_cast<double>(s2) / n;
    res.diag.moment3 = static_cast<double>(s3) / n;
    res.diag.avg_candidates = static_cast<double>(total.candidates) / n;
    res.diag.avg_maximal = static_cast<double>(total.maximal) / n;
    res.diag.avg_external = static_cast<double>(total.external) / n;
    return res;
}

}  // namespace records
