#include "records/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace records::analytics {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 stirling2(int r, int m) {
    if (r < 0 || m < 0 || r > 30 || m > 30) {
        throw std::invalid_argument("stirling2: arguments must lie in [0, 30]");
    }
    if (r == 0 && m == 0) return 1;
    if (r == 0 || m == 0 || m > r) return 0;
    // Rolling row of S(i, .) for i = 1..r.
    std::vector<u128> prev(static_cast<std::size_t>(m) + 1, 0);
    prev[1] = 1;  // S(1,1)
    for (int i = 2; i <= r; ++i) {
        std::vector<u128> cur(static_cast<std::size_t>(m) + 1, 0);
        for (int j = 1; j <= std::min(i, m); ++j) {
            cur[j] = static_cast<u128>(j) * prev[j] + prev[j - 1];
        }
        prev.swap(cur);
    }
    return prev[m];
}

double d2_exact_pmf(int k) {
    if (k < 0) throw std::invalid_argument("d2_exact_pmf: k must be >= 0");
    return std::pow(2.0, -(k + 1.0));
}

double d2_exact_tail(int k) {
    if (k < 0) throw std::invalid_argument("d2_exact_tail: k must be >= 0");
    return std::pow(2.0, -static_cast<double>(k));
}

double d2_moment(int r) {
    if (r < 1 || r > 20) throw std::invalid_argument("d2_moment: r must lie in [1, 20]");
    long double sum = 0.0L;
    long double mfact = 1.0L;
    for (int m = 1; m <= r; ++m) {
        mfact *= m;
        sum += mfact * static_cast<long double>(stirling2(r, m));
    }
    return static_cast<double>(sum);
}

static void require_d_ge_2(int d, const char* what) {
    if (d < 2) throw std::invalid_argument(std::string(what) + ": requires d >= 2");
}

double a_d(int d) {
    require_d_ge_2(d, "a_d");
    const double dd = d;
    return std::pow(2.0, 1.0 / dd) * std::pow(dd, (dd + 1.0) / (dd - 1.0));
}

double log_moment_upper_bound(int d, int r) {
    require_d_ge_2(d, "moment_upper_bound");
    if (r < 1) throw std::invalid_argument("moment_upper_bound: r must be >= 1");
    const double dd = d, rr = r;
    const double log_ad = std::log(2.0) / dd + (dd + 1.0) / (dd - 1.0) * std::log(dd);
    return rr * log_ad + (dd + 1.0 - 1.0 / (dd - 1.0)) * rr * std::log(rr);
}

double moment_upper_bound(int d, int r) { return std::exp(log_moment_upper_bound(d, r)); }

double log_brightwell_bound(int d, std::uint64_t m) {
    require_d_ge_2(d, "brightwell_bound");
    if (m < 1) throw std::invalid_argument("brightwell_bound: m must be >= 1");
    const double dd = d, mm = static_cast<double>(m);
    const double log_ad = std::log(2.0) / dd + (dd + 1.0) / (dd - 1.0) * std::log(dd);
    return mm * log_ad - mm / (dd - 1.0) * std::log(mm);
}

double brightwell_bound(int d, std::uint64_t m) {
    return std::exp(log_brightwell_bound(d, m));
}

double gamma_tail(int d, double delta) {
    if (d < 1) throw std::invalid_argument("gamma_tail: d must be >= 1");
    if (delta < 0.0) throw std::invalid_argument("gamma_tail: delta must be >= 0");
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < d; ++j) {
        term *= delta / j;
        sum += term;
    }
    return std::exp(-delta) * sum;
}

double gumbel_pdf(double g) { return std::exp(-g - std::exp(-g)); }

double gumbel_cdf(double g) { return std::exp(-std::exp(-g)); }

double pk1_lower(int d) {
    if (d < 1) throw std::invalid_argument("pk1_lower: d must be >= 1");
    return std::pow(4.0, -static_cast<double>(d));
}

double pk1_lower_curve(int d, double c) {
    if (d < 1) throw std::invalid_argument("pk1_lower_curve: d must be >= 1");
    return std::pow((std::exp(c) - 1.0) / std::exp(2.0 * c), static_cast<double>(d));
}

double pk1_upper_asymptotic_expr(int d, double c) {
    if (d < 1) throw std::invalid_argument("pk1_upper_asymptotic_expr: d must be >= 1");
    if (c <= 0.0) throw std::invalid_argument("pk1_upper_asymptotic_expr: c must be > 0");
    const double log_bracket = (d - 2.0) * std::log(c) - std::lgamma(c + 1.0);
    return (1.0 + 1.0 / c) * std::exp(-log_bracket / (c + 1.0));
}

Pk1Bounds pk1_bounds(int d) {
    Pk1Bounds out;
    out.d = d;
    out.lower = pk1_lower(d);
    // Grid minimization of the asymptotic upper expression; the large-d
    // optimum sits near c = 3.59.
    double best = std::numeric_limits<double>::infinity(), best_c = 0.0;
    for (double c = 0.25; c <= 8.0 + 1e-12; c += 0.01) {
        const double v = pk1_upper_asymptotic_expr(d, c);
        out.upper_curve.emplace_back(c, v);
        if (v < best) {
            best = v;
            best_c = c;
        }
    }
    out.upper_asymptotic = best;
    out.upper_c_star = best_c;
    return out;
}

double tail_lower_constant(int d) {
    require_d_ge_2(d, "tail_lower_constant");
    double fact = 1.0;
    for (int j = 2; j < d; ++j) fact *= j;
    return std::exp(1.0) / (std::exp(1.0) - 1.0) * fact;
}

TailCurves tail_bound_curves(int d, std::uint64_t k) {
    require_d_ge_2(d, "tail_bound_curves");
    if (k < 1) throw std::invalid_argument("tail_bound_curves: k must be >= 1");
    TailCurves out;
    const double c = tail_lower_constant(d);
    out.lower = std::exp(-std::pow(c * static_cast<double>(k), 1.0 / (d - 1.0)));
    // Markov bound k^-r E K^r minimized over r; the log objective is convex
    // in r, so stop once it starts increasing.
    const double logk = std::log(static_cast<double>(k));
    double best = 0.0;  // log of current best
    int best_r = 1;
    bool first = true;
    for (int r = 1; r <= 4000; ++r) {
        const double v = log_moment_upper_bound(d, r) - r * logk;
        if (first || v < best) {
            best = v;
            best_r = r;
            first = false;
        } else if (r > best_r + 2) {
            break;
        }
    }
    out.upper = std::min(1.0, std::exp(best));
    out.upper_argmin_r = best_r;
    return out;
}

}  // namespace records::analytics
