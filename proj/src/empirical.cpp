#include "records/empirical.hpp"

#include <algorithm>
#include <cmath>

namespace records {

double EmpiricalLaw::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
    return m;
}

double EmpiricalLaw::prob_geq(std::size_t k) const {
    double p = 0.0;
    for (std::size_t i = k; i < pmf.size(); ++i) p += pmf[i];
    return p;
}

EmpiricalLaw law_from_histogram(const std::map<std::uint32_t, std::uint64_t>& hist,
                                std::uint64_t trials) {
    EmpiricalLaw law;
    law.trials = trials;
    if (trials == 0 || hist.empty()) return law;
    const std::uint32_t kmax = hist.rbegin()->first;
    law.pmf.assign(kmax + 1, 0.0);
    law.se.assign(kmax + 1, 0.0);
    const double n = static_cast<double>(trials);
    for (const auto& [k, c] : hist) {
        const double p = static_cast<double>(c) / n;
        law.pmf[k] = p;
        law.se[k] = std::sqrt(p * (1.0 - p) / n);
    }
    return law;
}

double tv_distance(const EmpiricalLaw& a, const EmpiricalLaw& b) {
    const std::size_t kmax = std::max(a.pmf.size(), b.pmf.size());
    double s = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) s += std::fabs(a.prob_at(k) - b.prob_at(k));
    return 0.5 * s;
}

double tv_combined_se(const EmpiricalLaw& a, const EmpiricalLaw& b) {
    const std::size_t kmax = std::max(a.se.size(), b.se.size());
    double s = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) {
        const double sa = a.se_at(k), sb = b.se_at(k);
        s += std::sqrt(sa * sa + sb * sb);
    }
    return 0.5 * s;
}

}  // namespace records
