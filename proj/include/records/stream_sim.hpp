#ifndef RECORDS_STREAM_SIM_HPP
#define RECORDS_STREAM_SIM_HPP

#include <cstdint>
#include <map>
#include <string>

#include "records/empirical.hpp"
#include "records/frontier.hpp"

namespace records {

// Generating model for the i.i.d. observation stream.
//   ExpMax:  Exponential(1) coordinates, record-large convention.
//   UnifMin: Uniform(0,1) coordinates, record-small convention, run through
//            the same frontier logic by negating coordinates.
enum class StreamModel { ExpMax, UnifMin };

std::string to_string(StreamModel m);

struct StreamStats {
    std::uint64_t n = 0;
    std::uint64_t records_total = 0;
    std::uint64_t remaining = 0;
    std::uint64_t total_kills = 0;
    // Count of record events with exactly k kills, pooled over observation
    // indices in [window_lo, window_hi].
    std::map<std::uint32_t, std::uint64_t> kill_histogram;
    std::uint64_t window_lo = 1, window_hi = 0;

    // Every record either remains or was killed exactly once.
    bool conservation_ok() const { return records_total == remaining + total_kills; }
    std::uint64_t window_events() const;
    void merge(const StreamStats& other);
};

FrontierBackend auto_backend(int d);

// Feed n fresh observations through a frontier. The kill histogram covers
// the whole stream, so the conservation identity holds on the returned
// stats exactly.
StreamStats run_stream(int d, std::uint64_t n, StreamModel model, std::uint64_t seed);

// Pooled estimate of the conditional kill-count law: runs `replicates`
// independent streams to length ceil(n_target * window_factor) and pools
// record events with index in [n_target, length]. Throws
// InsufficientEventsError when no events land in the window.
EmpiricalLaw estimate_conditional_law(int d, std::uint64_t n_target, double window_factor,
                                      std::uint32_t replicates, StreamModel model,
                                      std::uint64_t seed, int threads = 0);

struct RateEstimate {
    double p = 0.0;
    double se = 0.0;
    std::uint64_t trials = 0;
    double asymptotic_ref = 0.0;
};

// Fraction of independent trials whose n-th observation sets a record;
// asymptotic_ref carries n^-1 (ln n)^{d-1}/(d-1)!.
RateEstimate estimate_record_rate(int d, std::uint64_t n, std::uint64_t trials,
                                  std::uint64_t seed, int threads = 0);

// Fraction of trials in which all m observations remain records (mutually
// incomparable).
RateEstimate estimate_all_records_prob(int d, std::uint32_t m, std::uint64_t trials,
                                       std::uint64_t seed, int threads = 0);

}  // namespace records

#endif
