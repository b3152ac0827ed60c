#include "records/stream_sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "records/errors.hpp"
#include "records/parallel.hpp"
#include "records/rng.hpp"

namespace records {

std::string to_string(StreamModel m) {
    return m == StreamModel::ExpMax ? "exp-max" : "unif-min";
}

std::uint64_t StreamStats::window_events() const {
    std::uint64_t s = 0;
    for (const auto& [k, c] : kill_histogram) s += c;
    return s;
}

void StreamStats::merge(const StreamStats& other) {
    n += other.n;
    records_total += other.records_total;
    remaining += other.remaining;
    total_kills += other.total_kills;
    for (const auto& [k, c] : other.kill_histogram) kill_histogram[k] += c;
}

FrontierBackend auto_backend(int d) {
    return d == 2 ? FrontierBackend::Staircase2D : FrontierBackend::GenericScan;
}

namespace {

void draw_observation(Rng& rng, StreamModel model, double* p, int d) {
    if (model == StreamModel::ExpMax) {
        for (int j = 0; j < d; ++j) p[j] = rng.exponential();
    } else {
        // Record-small on Uniform(0,1) maps to record-large on the negated
        // coordinates.
        for (int j = 0; j < d; ++j) p[j] = -rng.unit_open();
    }
}

StreamStats run_one_stream(int d, std::uint64_t len, std::uint64_t window_lo,
                           std::uint64_t window_hi, StreamModel model, std::uint64_t seed) {
    StreamStats st;
    st.n = len;
    st.window_lo = window_lo;
    st.window_hi = window_hi;
    Frontier frontier(d, auto_backend(d));
    Rng rng(seed);
    std::vector<double> p(static_cast<std::size_t>(d));
    for (std::uint64_t i = 1; i <= len; ++i) {
        draw_observation(rng, model, p.data(), d);
        const RecordOutcome oc = frontier.insert(p);
        if (oc.is_record) {
            ++st.records_total;
            st.total_kills += oc.kills;
            if (i >= window_lo && i <= window_hi) ++st.kill_histogram[oc.kills];
        }
    }
    st.remaining = frontier.size();
    return st;
}

void check_args(int d, std::uint64_t n) {
    if (d < 1) throw std::invalid_argument("stream: d must be >= 1");
    if (n < 1) throw std::invalid_argument("stream: n must be >= 1");
}

// Monte Carlo success fraction over independent trials, one child RNG
// stream per trial.
RateEstimate mc_fraction(std::uint64_t trials, std::uint64_t seed, int threads,
                         const std::function<bool(Rng&)>& trial) {
    const int nthreads = resolve_thread_count(threads);
    std::vector<std::uint64_t> hits(chunk_count(trials, nthreads), 0);
    parallel_chunks(trials, nthreads,
                    [&](std::uint64_t begin, std::uint64_t end, std::uint64_t chunk) {
                        std::uint64_t h = 0;
                        for (std::uint64_t t = begin; t < end; ++t) {
                            Rng rng(child_seed(seed, t));
                            if (trial(rng)) ++h;
                        }
                        hits[chunk] = h;
                    });
    std::uint64_t hit = 0;
    for (std::uint64_t h : hits) hit += h;
    RateEstimate est;
    est.trials = trials;
    est.p = static_cast<double>(hit) / static_cast<double>(trials);
    est.se = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(trials));
    return est;
}

}  // namespace

StreamStats run_stream(int d, std::uint64_t n, StreamModel model, std::uint64_t seed) {
    check_args(d, n);
    return run_one_stream(d, n, 1, n, model, seed);
}

EmpiricalLaw estimate_conditional_law(int d, std::uint64_t n_target, double window_factor,
                                      std::uint32_t replicates, StreamModel model,
                                      std::uint64_t seed, int threads) {
    check_args(d, n_target);
    if (n_target < 2) throw std::invalid_argument("estimate_conditional_law: n_target must be >= 2");
    if (!(window_factor > 1.0)) {
        throw std::invalid_argument("estimate_conditional_law: window_factor must be > 1");
    }
    if (replicates < 1) throw std::invalid_argument("estimate_conditional_law: replicates must be >= 1");

    const auto len = static_cast<std::uint64_t>(
        std::ceil(static_cast<double>(n_target) * window_factor));
    const int nthreads = resolve_thread_count(threads);
    std::vector<StreamStats> acc(chunk_count(replicates, nthreads));
    parallel_chunks(replicates, nthreads,
                    [&](std::uint64_t begin, std::uint64_t end, std::uint64_t chunk) {
                        for (std::uint64_t r = begin; r < end; ++r) {
                            StreamStats st = run_one_stream(d, len, n_target, len, model,
                                                            child_seed(seed, r));
                            if (!st.conservation_ok()) {
                                throw std::logic_error("stream conservation identity violated");
                            }
                            acc[chunk].merge(st);
                        }
                    });
    StreamStats total;
    for (const auto& a : acc) total.merge(a);

    const std::uint64_t events = total.window_events();
    if (events == 0) throw InsufficientEventsError(0);

    EmpiricalLaw law = law_from_histogram(total.kill_histogram, events);
    law.d = d;
    law.source = "stream";
    law.model = to_string(model);
    law.window_lo = n_target;
    law.window_hi = len;
    law.seed = seed;
    return law;
}

RateEstimate estimate_record_rate(int d, std::uint64_t n, std::uint64_t trials,
                                  std::uint64_t seed, int threads) {
    check_args(d, n);
    if (trials < 1) throw std::invalid_argument("estimate_record_rate: trials must be >= 1");
    RateEstimate est = mc_fraction(trials, seed, threads, [d, n](Rng& rng) {
        Frontier frontier(d, auto_backend(d));
        std::vector<double> p(static_cast<std::size_t>(d));
        bool last_is_record = false;
        for (std::uint64_t i = 1; i <= n; ++i) {
            for (int j = 0; j < d; ++j) p[j] = rng.exponential();
            last_is_record = frontier.insert(p).is_record;
        }
        return last_is_record;
    });
    double fact = 1.0;
    for (int j = 2; j < d; ++j) fact *= j;
    est.asymptotic_ref = n == 1 ? 1.0
                                : std::pow(std::log(static_cast<double>(n)), d - 1) /
                                      (fact * static_cast<double>(n));
    return est;
}

RateEstimate estimate_all_records_prob(int d, std::uint32_t m, std::uint64_t trials,
                                       std::uint64_t seed, int threads) {
    check_args(d, m);
    if (trials < 1) throw std::invalid_argument("estimate_all_records_prob: trials must be >= 1");
    RateEstimate est = mc_fraction(trials, seed, threads, [d, m](Rng& rng) {
        Frontier frontier(d, auto_backend(d));
        std::vector<double> p(static_cast<std::size_t>(d));
        for (std::uint32_t i = 0; i < m; ++i) {
            for (int j = 0; j < d; ++j) p[j] = rng.exponential();
            const RecordOutcome oc = frontier.insert(p);
            if (!oc.is_record || oc.kills != 0) return false;
        }
        return true;
    });
    est.asymptotic_ref = std::numeric_limits<double>::quiet_NaN();
    return est;
}

}  // namespace records
