#ifndef RECORDS_EMPIRICAL_HPP
#define RECORDS_EMPIRICAL_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace records {

// Conditional pmf estimate over kill counts k, with binomial standard
// errors and the metadata needed to reproduce it.
struct EmpiricalLaw {
    std::vector<double> pmf;  // dense over k = 0..kmax
    std::vector<double> se;   // se[k] = sqrt(pmf[k](1-pmf[k])/trials)
    std::uint64_t trials = 0;

    int d = 0;
    std::string source;  // "stream" or "limit"
    std::string model;   // "exp-max" / "unif-min" for stream laws
    double delta = std::numeric_limits<double>::quiet_NaN();
    double tv_budget = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t window_lo = 0, window_hi = 0;
    std::uint64_t seed = 0;

    double prob_at(std::size_t k) const { return k < pmf.size() ? pmf[k] : 0.0; }
    double se_at(std::size_t k) const { return k < se.size() ? se[k] : 0.0; }
    double mean() const;
    double prob_geq(std::size_t k) const;
};

// Densify an integer histogram into pmf + standard errors.
EmpiricalLaw law_from_histogram(const std::map<std::uint32_t, std::uint64_t>& hist,
                                std::uint64_t trials);

// Half the l1 distance between two pmfs (shorter one zero-padded).
double tv_distance(const EmpiricalLaw& a, const EmpiricalLaw& b);

// Conservative error scale for an empirical TV estimate: half the sum of
// the combined per-bin standard errors.
double tv_combined_se(const EmpiricalLaw& a, const EmpiricalLaw& b);

}  // namespace records

#endif
