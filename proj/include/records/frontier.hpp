#ifndef RECORDS_FRONTIER_HPP
#define RECORDS_FRONTIER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "records/geometry.hpp"

namespace records {

enum class FrontierBackend { GenericScan, Staircase2D };

// Result of feeding one observation to a frontier: either the point was
// strictly dominated by a current record (not a record), or it is a record
// and removed `kills` current records. `killed` is populated only when the
// frontier was built with retain_killed.
struct RecordOutcome {
    bool is_record = false;
    std::uint32_t kills = 0;
    std::vector<Point> killed;
};

// The set of current records: an antichain under strict dominance,
// maintained incrementally.
//
// GenericScan works for any dimension with an O(m) scan per insert.
// Staircase2D (dim == 2 only) keeps points sorted by first coordinate
// ascending (second descending among equal firsts), giving log-time record
// tests and a contiguous kill run.
class Frontier {
public:
    explicit Frontier(int dim,
                      FrontierBackend backend = FrontierBackend::GenericScan,
                      bool retain_killed = false);

    RecordOutcome insert(std::span<const double> p);

    std::size_t size() const;
    int dim() const { return dim_; }
    FrontierBackend backend() const { return backend_; }

    // Current record set in lexicographic order, independent of backend and
    // internal scan heuristics.
    std::vector<Point> points() const;

private:
    struct Pt2 {
        double x, y;
    };

    RecordOutcome insert_generic(const double* p);
    RecordOutcome insert_staircase(const double* p);

    int dim_;
    FrontierBackend backend_;
    bool retain_killed_;
    std::vector<double> flat_;       // GenericScan rows, row-major
    std::vector<Pt2> stair_;         // Staircase2D
};

// Indices i (ascending) such that points[i] is dominated by no other member.
// All points must share one dimension. Empty input yields empty output.
std::vector<std::size_t> maxima_of(const std::vector<Point>& points);

}  // namespace records

#endif
