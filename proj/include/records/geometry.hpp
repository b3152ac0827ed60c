#ifndef RECORDS_GEOMETRY_HPP
#define RECORDS_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace records {

// A point is an ordered tuple of finite real coordinates; its dimension is
// the tuple length.
using Point = std::vector<double>;

namespace detail {

// All coordinates of a strictly below b. No dimension check.
inline bool all_lt(const double* a, const double* b, int d) {
    for (int j = 0; j < d; ++j) {
        if (!(a[j] < b[j])) return false;
    }
    return true;
}

inline void check_same_dim(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch between points");
    }
}

}  // namespace detail

// a strictly below b in every coordinate (the strict partial order a < b
// componentwise). Equal coordinates never dominate.
inline bool strictly_dominates(std::span<const double> a, std::span<const double> b) {
    detail::check_same_dim(a, b);
    return detail::all_lt(a.data(), b.data(), static_cast<int>(a.size()));
}

// Coordinate sum; equals the l1 norm when all coordinates are nonnegative.
inline double plus_sum(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

inline double l1_dist(std::span<const double> a, std::span<const double> b) {
    detail::check_same_dim(a, b);
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::fabs(a[j] - b[j]);
    return s;
}

}  // namespace records

#endif
