#include "doctest.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "records/frontier.hpp"
#include "records/rng.hpp"

using records::Frontier;
using records::FrontierBackend;
using records::Point;
using records::RecordOutcome;

namespace {

// Reference insert semantics, straight from the definitions.
struct NaiveFrontier {
    std::vector<Point> pts;
    RecordOutcome insert(const Point& p) {
        RecordOutcome out;
        for (const Point& m : pts) {
            if (records::strictly_dominates(p, m)) return out;
        }
        out.is_record = true;
        std::vector<Point> keep;
        for (Point& m : pts) {
            if (records::strictly_dominates(m, p)) {
                ++out.kills;
                out.killed.push_back(m);
            } else {
                keep.push_back(std::move(m));
            }
        }
        keep.push_back(p);
        pts = std::move(keep);
        return out;
    }
    std::vector<Point> sorted() const {
        std::vector<Point> s = pts;
        std::sort(s.begin(), s.end());
        return s;
    }
};

Point random_point(records::Rng& rng, int d, bool coarse) {
    Point p(d);
    for (int j = 0; j < d; ++j) {
        // Coarse grids force ties in single coordinates and exact duplicates.
        p[j] = coarse ? static_cast<double>(rng.next_u64() % 6) : rng.exponential();
    }
    return p;
}

}  // namespace

TEST_CASE("insert examples") {
    for (FrontierBackend be : {FrontierBackend::GenericScan, FrontierBackend::Staircase2D}) {
        CAPTURE(static_cast<int>(be));
        Frontier f(2, be);
        RecordOutcome oc = f.insert(Point{2, 2});
        CHECK(oc.is_record);
        CHECK(oc.kills == 0);

        oc = f.insert(Point{3, 3});
        CHECK(oc.is_record);
        CHECK(oc.kills == 1);
        CHECK(f.points() == std::vector<Point>{{3, 3}});

        Frontier g(2, be);
        g.insert(Point{1, 3});
        g.insert(Point{3, 1});
        oc = g.insert(Point{2, 2});
        CHECK(oc.is_record);
        CHECK(oc.kills == 0);
        CHECK(g.points() == std::vector<Point>{{1, 3}, {2, 2}, {3, 1}});

        Frontier h(2, be);
        h.insert(Point{1, 1});
        oc = h.insert(Point{0, 0});
        CHECK_FALSE(oc.is_record);
        CHECK(h.size() == 1);
    }
}

TEST_CASE("dimension and backend guards") {
    CHECK_THROWS_AS(Frontier(3, FrontierBackend::Staircase2D), std::invalid_argument);
    CHECK_THROWS_AS(Frontier(0), std::invalid_argument);
    Frontier f(2);
    CHECK_THROWS_AS(f.insert(Point{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("killed points retained on request") {
    Frontier f(2, FrontierBackend::GenericScan, true);
    f.insert(Point{1, 4});
    f.insert(Point{2, 3});
    f.insert(Point{4, 1});
    RecordOutcome oc = f.insert(Point{3, 5});
    CHECK(oc.is_record);
    CHECK(oc.kills == 2);
    std::sort(oc.killed.begin(), oc.killed.end());
    CHECK(oc.killed == std::vector<Point>{{1, 4}, {2, 3}});
}

TEST_CASE("dimension one frontier is a running maximum") {
    Frontier f(1);
    records::Rng rng(7);
    std::uint64_t recs = 0;
    for (int i = 0; i < 500; ++i) {
        const RecordOutcome oc = f.insert(Point{rng.exponential()});
        CHECK(f.size() <= 1);
        if (oc.is_record) {
            ++recs;
            CHECK(oc.kills == (recs == 1 ? 0u : 1u));
        }
    }
}

TEST_CASE("backends agree and conserve records") {
    records::Rng seeds(123);
    for (int rep = 0; rep < 12; ++rep) {
        const bool coarse = rep % 3 == 0;  // adversarial ties every third run
        records::Rng rng(seeds.next_u64());
        Frontier gen(2, FrontierBackend::GenericScan);
        Frontier stair(2, FrontierBackend::Staircase2D);
        NaiveFrontier naive;
        std::uint64_t records_total = 0, kills_total = 0;
        for (int i = 0; i < 4000; ++i) {
            const Point p = random_point(rng, 2, coarse);
            const RecordOutcome a = gen.insert(p);
            const RecordOutcome b = stair.insert(p);
            const RecordOutcome c = naive.insert(p);
            REQUIRE(a.is_record == c.is_record);
            REQUIRE(b.is_record == c.is_record);
            REQUIRE(a.kills == c.kills);
            REQUIRE(b.kills == c.kills);
            if (a.is_record) {
                ++records_total;
                kills_total += a.kills;
            }
        }
        CHECK(gen.points() == naive.sorted());
        CHECK(stair.points() == naive.sorted());
        CHECK(records_total == gen.size() + kills_total);
    }
}

TEST_CASE("conservation holds for higher dimensions") {
    for (int d : {1, 3, 5}) {
        records::Rng rng(1000 + d);
        Frontier f(d);
        std::uint64_t records_total = 0, kills_total = 0;
        for (int i = 0; i < 5000; ++i) {
            const RecordOutcome oc = f.insert(random_point(rng, d, false));
            if (oc.is_record) {
                ++records_total;
                kills_total += oc.kills;
            }
        }
        CHECK(records_total == f.size() + kills_total);
    }
}

TEST_CASE("maxima_of examples") {
    CHECK(records::maxima_of({}).empty());
    CHECK(records::maxima_of({{1, 3}, {3, 1}, {2, 2}}) ==
          std::vector<std::size_t>{0, 1, 2});
    CHECK(records::maxima_of({{1, 1}, {2, 2}}) == std::vector<std::size_t>{1});
    // A chain keeps only its top element.
    CHECK(records::maxima_of({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}}) ==
          std::vector<std::size_t>{2});
}

TEST_CASE("maxima_of is consistent with insert semantics") {
    records::Rng rng(42);
    for (int rep = 0; rep < 80; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 3);
        Frontier f(d);
        std::vector<Point> stream;
        for (int i = 0; i < 60; ++i) stream.push_back(random_point(rng, d, rep % 2 == 0));
        for (const Point& p : stream) f.insert(p);

        const std::vector<Point> frontier_pts = f.points();
        const Point extra = random_point(rng, d, rep % 2 == 0);
        std::vector<Point> with_extra = frontier_pts;
        with_extra.push_back(extra);
        const auto maxima = records::maxima_of(with_extra);

        Frontier copy(d);
        for (const Point& p : frontier_pts) copy.insert(p);
        const RecordOutcome oc = copy.insert(extra);
        const bool extra_is_max =
            std::find(maxima.begin(), maxima.end(), with_extra.size() - 1) != maxima.end();
        CHECK(oc.is_record == extra_is_max);
        if (oc.is_record) {
            // Survivors of the insert are exactly the maxima of the union.
            CHECK(maxima.size() == copy.size());
        }
    }
}
