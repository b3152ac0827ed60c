#include "records/frontier.hpp"

#include <algorithm>
#include <stdexcept>

namespace records {

Frontier::Frontier(int dim, FrontierBackend backend, bool retain_killed)
    : dim_(dim), backend_(backend), retain_killed_(retain_killed) {
    if (dim < 1) throw std::invalid_argument("frontier dimension must be >= 1");
    if (backend == FrontierBackend::Staircase2D && dim != 2) {
        throw std::invalid_argument("Staircase2D backend requires dim == 2");
    }
}

std::size_t Frontier::size() const {
    return backend_ == FrontierBackend::Staircase2D
               ? stair_.size()
               : flat_.size() / static_cast<std::size_t>(dim_);
}

std::vector<Point> Frontier::points() const {
    std::vector<Point> out;
    if (backend_ == FrontierBackend::Staircase2D) {
        out.reserve(stair_.size());
        for (const Pt2& q : stair_) out.push_back({q.x, q.y});
    } else {
        const std::size_t m = size();
        out.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            out.emplace_back(flat_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                             flat_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

RecordOutcome Frontier::insert(std::span<const double> p) {
    if (static_cast<int>(p.size()) != dim_) {
        throw std::invalid_argument("dimension mismatch between point and frontier");
    }
    return backend_ == FrontierBackend::Staircase2D ? insert_staircase(p.data())
                                                    : insert_generic(p.data());
}

RecordOutcome Frontier::insert_generic(const double* p) {
    const int d = dim_;
    const std::size_t m = size();
    // Record test: rejected iff p is strictly below some member. On a hit,
    // promote the dominator halfway to the front so frequent dominators are
    // found early on later inserts.
    for (std::size_t i = 0; i < m; ++i) {
        if (detail::all_lt(p, &flat_[i * d], d)) {
            if (i > 0) {
                const std::size_t j = i / 2;
                for (int c = 0; c < d; ++c) std::swap(flat_[i * d + c], flat_[j * d + c]);
            }
            return RecordOutcome{};
        }
    }
    RecordOutcome out;
    out.is_record = true;
    // Remove members strictly below p (swap-with-last).
    std::size_t cnt = m;
    for (std::size_t i = 0; i < cnt;) {
        if (detail::all_lt(&flat_[i * d], p, d)) {
            if (retain_killed_) {
                out.killed.emplace_back(flat_.begin() + static_cast<std::ptrdiff_t>(i * d),
                                        flat_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
            }
            --cnt;
            for (int c = 0; c < d; ++c) flat_[i * d + c] = flat_[cnt * d + c];
            ++out.kills;
        } else {
            ++i;
        }
    }
    flat_.resize(cnt * d);
    flat_.insert(flat_.end(), p, p + d);
    return out;
}

RecordOutcome Frontier::insert_staircase(const double* p) {
    const double px = p[0], py = p[1];
    // Among members with x > px the maximal y sits at the first such
    // position, so one ordered lookup decides the record test.
    auto after = std::upper_bound(stair_.begin(), stair_.end(), px,
                                  [](double v, const Pt2& q) { return v < q.x; });
    if (after != stair_.end() && after->y > py) return RecordOutcome{};

    RecordOutcome out;
    out.is_record = true;
    // Kills form the tail of the strict-x prefix: y is non-increasing there,
    // so members below py are contiguous.
    auto pre_end = std::lower_bound(stair_.begin(), stair_.end(), px,
                                    [](const Pt2& q, double v) { return q.x < v; });
    auto kill_begin = std::partition_point(stair_.begin(), pre_end,
                                           [py](const Pt2& q) { return q.y >= py; });
    out.kills = static_cast<std::uint32_t>(pre_end - kill_begin);
    if (retain_killed_) {
        for (auto it = kill_begin; it != pre_end; ++it) out.killed.push_back({it->x, it->y});
    }
    auto pos = stair_.erase(kill_begin, pre_end);
    // Insertion order: x ascending, y descending among equal x.
    pos = std::lower_bound(pos, stair_.end(), Pt2{px, py},
                           [](const Pt2& a, const Pt2& b) {
                               return a.x < b.x || (a.x == b.x && a.y > b.y);
                           });
    stair_.insert(pos, Pt2{px, py});
    return out;
}

std::vector<std::size_t> maxima_of(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> out;
    if (n == 0) return out;
    const std::size_t d = points[0].size();
    for (const Point& q : points) {
        if (q.size() != d) throw std::invalid_argument("maxima_of: mixed dimensions");
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < n && !dominated; ++j) {
            if (j != i && detail::all_lt(points[i].data(), points[j].data(), static_cast<int>(d))) {
                dominated = true;
            }
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

}  // namespace records
