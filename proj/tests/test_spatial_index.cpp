#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "sknni/errors.hpp"
#include "sknni/geodesy.hpp"
#include "sknni/spatial_index.hpp"
#include "test_support.hpp"

using namespace sknni;
using test_support::brute_force_knn;
using test_support::clustered_coords;
using test_support::example_observations;
using test_support::uniform_sphere_coord;

namespace {

std::vector<CartesianPoint> embed(const std::vector<GeoCoord>& coords,
                                  SphereRadius rho = SphereRadius{}) {
    std::vector<CartesianPoint> points;
    points.reserve(coords.size());
    for (const GeoCoord& c : coords) {
        points.push_back(to_cartesian(c, rho));
    }
    return points;
}

std::vector<CartesianPoint> example_points() {
    std::vector<GeoCoord> coords;
    for (const Observation& obs : example_observations()) {
        coords.push_back(obs.coord);
    }
    return embed(coords);
}

}  // namespace

TEST_CASE("a singleton index answers with index 0") {
    const SpatialIndex index(
        {to_cartesian(GeoCoord{10.0, 10.0}, SphereRadius{})});
    CHECK(index.size() == 1);
    CHECK(index.depth() == 1);
    const std::vector<CartesianPoint> query{
        to_cartesian(GeoCoord{-45.0, 120.0}, SphereRadius{})};
    const NeighborMatrix result = query_knn(index, query, 1);
    CHECK(result(0, 0) == 0);
}

TEST_CASE("building from zero points is rejected") {
    CHECK_THROWS_AS(SpatialIndex(std::vector<CartesianPoint>{}), ValidationError);
}

TEST_CASE("k outside [1, N] is rejected") {
    const SpatialIndex index(example_points());
    const std::vector<CartesianPoint> queries{index.points()[0]};
    CHECK_THROWS_AS(query_knn(index, queries, 0), ValidationError);
    CHECK_THROWS_AS(query_knn(index, queries, -3), ValidationError);
    CHECK_THROWS_AS(query_knn(index, queries, 5), ValidationError);
}

TEST_CASE("k=N returns a permutation of all indices") {
    const SpatialIndex index(example_points());
    const std::vector<CartesianPoint> query{
        to_cartesian(GeoCoord{0.0, -120.0}, SphereRadius{})};
    const NeighborMatrix result = query_knn(index, query, 4);
    std::set<std::uint32_t> seen(result.row(0).begin(), result.row(0).end());
    CHECK(seen == std::set<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("example data: the two stations on the query meridian come first") {
    const SpatialIndex index(example_points());
    const std::vector<CartesianPoint> query{
        to_cartesian(GeoCoord{0.0, -120.0}, SphereRadius{})};
    const NeighborMatrix result = query_knn(index, query, 2);
    // Stations 1 (30,-120) and 2 (-30,-120) tie exactly; the smaller
    // index leads.
    CHECK(result(0, 0) == 1);
    CHECK(result(0, 1) == 2);
}

TEST_CASE("exact coordinate duplicates are returned lower-index first") {
    const GeoCoord at{12.0, 34.0};
    std::vector<CartesianPoint> points =
        embed({GeoCoord{50.0, 50.0}, at, GeoCoord{-60.0, 10.0}, at});
    const SpatialIndex index(std::move(points));
    const std::vector<CartesianPoint> query{to_cartesian(at, SphereRadius{})};
    const NeighborMatrix result = query_knn(index, query, 2);
    CHECK(result(0, 0) == 1);
    CHECK(result(0, 1) == 3);
}

TEST_CASE("median splitting keeps the tree balanced") {
    RandomStream rng(101);
    std::vector<GeoCoord> coords;
    for (int i = 0; i < 1000; ++i) {
        coords.push_back(uniform_sphere_coord(rng));
    }
    const SpatialIndex index(embed(coords));
    const int bound = static_cast<int>(std::ceil(std::log2(1000.0))) + 2;
    CHECK(index.depth() <= bound);
}

TEST_CASE("index queries match the brute-force oracle on mixed instances") {
    RandomStream rng(500);
    for (int instance = 0; instance < 30; ++instance) {
        const std::size_t n = 1 + rng.index(1500);
        std::vector<GeoCoord> coords;
        if (instance % 2 == 0) {
            coords = clustered_coords(rng, n);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                coords.push_back(uniform_sphere_coord(rng));
            }
        }
        const std::vector<CartesianPoint> points = embed(coords);
        const SpatialIndex index(embed(coords));
        const int k = 1 + static_cast<int>(rng.index(std::min<std::size_t>(n, 25)));

        std::vector<CartesianPoint> queries;
        for (int q = 0; q < 40; ++q) {
            if (!coords.empty() && rng.uniform01() < 0.25) {
                queries.push_back(points[rng.index(points.size())]);
            } else {
                queries.push_back(
                    to_cartesian(uniform_sphere_coord(rng), SphereRadius{}));
            }
        }
        const NeighborMatrix result = query_knn(index, queries, k);
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            const std::vector<std::uint32_t> expected =
                brute_force_knn(points, queries[qi], static_cast<std::size_t>(k));
            for (std::size_t j = 0; j < expected.size(); ++j) {
                REQUIRE(result(qi, j) == expected[j]);
            }
        }
    }
}

TEST_CASE("neighbor rows have no duplicates and nondecreasing distances") {
    RandomStream rng(501);
    std::vector<GeoCoord> coords = clustered_coords(rng, 400);
    const std::vector<CartesianPoint> points = embed(coords);
    const SpatialIndex index(embed(coords));
    std::vector<CartesianPoint> queries;
    for (int q = 0; q < 100; ++q) {
        queries.push_back(to_cartesian(uniform_sphere_coord(rng), SphereRadius{}));
    }
    const NeighborMatrix result = query_knn(index, queries, 20);
    for (std::size_t i = 0; i < result.rows(); ++i) {
        std::set<std::uint32_t> seen;
        double previous = -1.0;
        for (std::size_t j = 0; j < result.cols(); ++j) {
            const std::uint32_t id = result(i, j);
            CHECK(id < points.size());
            CHECK(seen.insert(id).second);
            const double d = squared_distance(queries[i], points[id]);
            CHECK(d >= previous);
            previous = d;
        }
    }
}

TEST_CASE("batch queries equal single-point queries") {
    RandomStream rng(502);
    std::vector<GeoCoord> coords = clustered_coords(rng, 300);
    const SpatialIndex index(embed(coords));
    std::vector<CartesianPoint> queries;
    for (int q = 0; q < 50; ++q) {
        queries.push_back(to_cartesian(uniform_sphere_coord(rng), SphereRadius{}));
    }
    const NeighborMatrix batch = query_knn(index, queries, 7);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const std::vector<CartesianPoint> one{queries[i]};
        const NeighborMatrix single = query_knn(index, one, 7);
        for (std::size_t j = 0; j < 7; ++j) {
            CHECK(batch(i, j) == single(0, j));
        }
    }
}

TEST_CASE("identical inputs build identical answers") {
    RandomStream rng(503);
    std::vector<GeoCoord> coords = clustered_coords(rng, 600);
    const SpatialIndex first(embed(coords));
    const SpatialIndex second(embed(coords));
    std::vector<CartesianPoint> queries;
    for (int q = 0; q < 60; ++q) {
        queries.push_back(to_cartesian(uniform_sphere_coord(rng), SphereRadius{}));
    }
    const NeighborMatrix a = query_knn(first, queries, 11);
    const NeighborMatrix b = query_knn(second, queries, 11);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            CHECK(a(i, j) == b(i, j));
        }
    }
}

TEST_CASE("permuting input points permutes neighbor labels, not neighbor sets") {
    RandomStream rng(504);
    std::vector<GeoCoord> coords;
    for (int i = 0; i < 500; ++i) {
        coords.push_back(uniform_sphere_coord(rng));  // continuous: no exact ties
    }
    const std::vector<CartesianPoint> points = embed(coords);

    std::vector<std::uint32_t> permutation(coords.size());
    for (std::size_t i = 0; i < permutation.size(); ++i) {
        permutation[i] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t i = permutation.size(); i > 1; --i) {
        std::swap(permutation[i - 1], permutation[rng.index(i)]);
    }
    std::vector<CartesianPoint> shuffled(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        shuffled[i] = points[permutation[i]];  // shuffled[i] was points[permutation[i]]
    }

    const SpatialIndex original = build_index(points);
    const SpatialIndex permuted = build_index(shuffled);
    std::vector<CartesianPoint> queries;
    for (int q = 0; q < 50; ++q) {
        queries.push_back(to_cartesian(uniform_sphere_coord(rng), SphereRadius{}));
    }
    const NeighborMatrix a = query_knn(original, queries, 9);
    const NeighborMatrix b = query_knn(permuted, queries, 9);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            CHECK(a(i, j) == permutation[b(i, j)]);
        }
    }
}
