#ifndef RECORDS_ERRORS_HPP
#define RECORDS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace records {

// Conditioning window produced no record events; carries the observed count
// so callers can report it.
class InsufficientEventsError : public std::runtime_error {
public:
    explicit InsufficientEventsError(std::uint64_t events)
        : std::runtime_error("insufficient conditioning events: " + std::to_string(events)),
          events_(events) {}
    std::uint64_t events() const { return events_; }

private:
    std::uint64_t events_;
};

// Expected candidate count of one truncated draw exceeds the configured
// budget. Never silently subsamples; carries the offending mass.
class CandidateBudgetError : public std::runtime_error {
public:
    CandidateBudgetError(double expected_candidates, double budget)
        : std::runtime_error("candidate budget exceeded: expected " +
                             std::to_string(expected_candidates) + " > budget " +
                             std::to_string(budget)),
          expected_candidates_(expected_candidates),
          budget_(budget) {}
    double expected_candidates() const { return expected_candidates_; }
    double budget() const { return budget_; }

private:
    double expected_candidates_;
    double budget_;
};

}  // namespace records

#endif
