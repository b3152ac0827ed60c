#ifndef RECORDS_ANALYTICS_HPP
#define RECORDS_ANALYTICS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace records::analytics {

using u128 = unsigned __int128;

std::string u128_to_string(u128 v);

// Stirling number of the second kind: partitions of an r-set into m
// nonempty blocks. Exact for r, m <= 30.
u128 stirling2(int r, int m);

// Exact two-dimensional law of the limiting kill count: shifted
// Geometric(1/2), pmf(k) = 2^-(k+1), tail(k) = P(K >= k) = 2^-k.
double d2_exact_pmf(int k);
double d2_exact_tail(int k);

// r-th moment of the two-dimensional law via the Stirling sum
// sum_{m=1..r} m! S(r,m); equals the direct pmf summation. r <= 20.
double d2_moment(int r);

// Constant a_d = 2^{1/d} d^{(d+1)/(d-1)} of the moment and all-records
// bounds. Requires d >= 2.
double a_d(int d);

// Moment bound E K^r <= a_d^r r^{(d+1-1/(d-1)) r}, in log space.
double log_moment_upper_bound(int d, int r);
double moment_upper_bound(int d, int r);

// All-records bound P(r_m = m) <= a_d^m m^{-m/(d-1)}, in log space. May
// exceed 1 for small m; returned as-is.
double log_brightwell_bound(int d, std::uint64_t m);
double brightwell_bound(int d, std::uint64_t m);

// P(Gamma(d,1) > delta) = e^-delta sum_{j<d} delta^j/j!.
double gamma_tail(int d, double delta);

double gumbel_pdf(double g);
double gumbel_cdf(double g);

// Bounds on P(K(d) >= 1).
double pk1_lower(int d);                            // 4^-d
double pk1_lower_curve(int d, double c);            // ((e^c - 1)/e^{2c})^d
double pk1_upper_asymptotic_expr(int d, double c);  // (1+1/c) [c^{d-2}/Gamma(c+1)]^{-1/(c+1)}

struct Pk1Bounds {
    int d = 0;
    double lower = 0.0;                              // rigorous at every d
    double upper_asymptotic = 0.0;                   // indicator only, not rigorous at finite d
    double upper_c_star = 0.0;                       // grid argmin
    std::vector<std::pair<double, double>> upper_curve;  // (c, expr(c)) over the grid
};
Pk1Bounds pk1_bounds(int d);

// Tail curves at a fixed k (d >= 2):
//   lower = exp[-(c k)^{1/(d-1)}] with c = e/(e-1) (d-1)!  (asymptotic form,
//           logged for comparison only)
//   upper = min over integer r >= 1 of k^-r * moment_upper_bound(d, r),
//           clamped to 1 (rigorous Markov bound at every k).
struct TailCurves {
    double lower = 0.0;
    double upper = 1.0;
    int upper_argmin_r = 1;
};
double tail_lower_constant(int d);  // e/(e-1) (d-1)!
TailCurves tail_bound_curves(int d, std::uint64_t k);

}  // namespace records::analytics

#endif
