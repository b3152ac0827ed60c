#ifndef RECORDS_LIMIT_SAMPLER_HPP
#define RECORDS_LIMIT_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "records/empirical.hpp"
#include "records/rng.hpp"

namespace records {

struct LimitConfig {
    int d = 2;
    double delta = 10.0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1;
    // Budget on the expected candidate count of a single draw; a draw whose
    // slab mass exceeds it fails loudly instead of subsampling.
    double max_expected_candidates = 5.0e7;
};

// Recommended truncation radius per dimension, balancing the truncation
// budget against the expected candidate count.
double default_delta(int d);

// One exact draw of the truncated count, with the realization sizes that
// produced it: k <= n_maximal <= n_candidates.
struct LimitSample {
    std::uint32_t k = 0;
    double g = 0.0;
    std::uint64_t n_candidates = 0;
    std::uint32_t n_maximal = 0;
    std::uint32_t n_external = 0;
};

// Retained view of one draw, enough to read off counts at any smaller
// radius: the l1 distances of the surviving maxima.
struct LimitRealization {
    double delta = 0.0;
    LimitSample sample;
    std::vector<double> surviving_eta;  // ascending
};

// Reusable buffers for the per-draw hot path.
class LimitWorkspace {
public:
    std::vector<double> etas;        // candidate distances
    std::vector<double> sort_tmp;    // radix scratch
    std::vector<std::uint32_t> radix_count;
    std::vector<double> min_front;   // minima of the candidate offsets, row-major
    std::vector<double> min_eta;
    std::vector<double> m_abs;       // maximal candidates in absolute coordinates
    std::vector<double> x_default;
    std::vector<double> pt;          // d scratch
    std::vector<char> alive;
};

// Standard Gumbel via inverse CDF: -ln(-ln U).
double sample_gumbel(Rng& rng);

// External phase of one truncated draw. Reads the maximal candidates of the
// slab from ws.min_front (offset rows from the reference point) and
// ws.min_eta (their l1 distances, ascending): realizes the killer process on
// the union of the regions above them, cell by cell, restricted to the
// process support and excluding the already-realized slab, and clears
// ws.alive[i] for every maximum a retained point dominates. Returns the
// retained point count. Exposed separately so the union-cell construction
// can be checked against its closed-form masses.
std::uint32_t sample_external_killers(int d, double g, std::span<const double> x_ref,
                                      LimitWorkspace& ws, Rng& rng);

// Slab mass integral: int_0^delta eta^{d-1}/(d-1)! e^eta d eta.
double gamma_slab_mass(int d, double delta);

// P(Gamma(d,1) > delta); upper-bounds the total-variation error of the
// truncated law against the untruncated one.
double tv_truncation_bound(int d, double delta);

// Exact draw of the number of process maxima strictly below the reference
// point and within l1 distance delta of it, for the level-g process.
// x_ref optionally replaces the default symmetric reference point and must
// have coordinate sum g (the law of k does not depend on the choice).
// Throws CandidateBudgetError when the slab mass exceeds the budget.
LimitSample sample_k_g_truncated(int d, double g, double delta, Rng& rng, LimitWorkspace& ws,
                                 double max_expected_candidates = 5.0e7,
                                 std::span<const double> x_ref = {},
                                 LimitRealization* realization = nullptr);

// Gumbel-mixed draw: g ~ standard Gumbel, then the level-g truncated count.
LimitSample sample_k_truncated(const LimitConfig& cfg, Rng& rng, LimitWorkspace& ws,
                               LimitRealization* realization = nullptr);

// Counts at radii deltas[i] <= realization delta, read off one realization.
// Nondecreasing in the radius.
std::vector<std::uint32_t> multi_delta_readout(const LimitRealization& realization,
                                               std::span<const double> deltas);

struct LimitDiagnostics {
    std::map<std::uint32_t, std::uint64_t> histogram;
    double mean_k = 0.0, se_mean = 0.0;
    double moment2 = 0.0, moment3 = 0.0;
    double avg_candidates = 0.0, avg_maximal = 0.0, avg_external = 0.0;
};

struct LimitLawResult {
    EmpiricalLaw law;
    LimitDiagnostics diag;
};

// Empirical law over cfg.samples independent draws; per_draw (optional)
// receives one LimitSample per draw in draw order.
LimitLawResult estimate_limit_law(const LimitConfig& cfg, int threads = 0,
                                  std::vector<LimitSample>* per_draw = nullptr);

}  // namespace records

#endif
