#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "sknni/errors.hpp"
#include "sknni/interp_functions.hpp"
#include "sknni/interpolation.hpp"
#include "test_support.hpp"

using namespace sknni;
using test_support::contains;
using test_support::example_observations;
using test_support::example_queries;
using test_support::uniform_sphere_coord;

namespace {

std::vector<Observation> random_observations(RandomStream& rng, std::size_t n) {
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < n; ++i) {
        obs.push_back(Observation{uniform_sphere_coord(rng),
                                  rng.uniform(-32.0, 32.0)});
    }
    return obs;
}

}  // namespace

TEST_CASE("construction validates and reports its inputs") {
    Interpolator interp(example_observations());
    CHECK(interp.size() == 4);
    CHECK(interp.radius().value() == kEarthRadiusKm);
    CHECK(interp.mode() == EmbeddingMode::Standard);

    CHECK_THROWS_WITH_AS(Interpolator(std::vector<Observation>{}),
                         doctest::Contains("observations are empty"),
                         ValidationError);

    std::vector<Observation> bad = example_observations();
    bad[2].coord.lat = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH_AS(Interpolator{bad}, doctest::Contains("lat"),
                         ValidationError);

    bad = example_observations();
    bad[0].value = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Interpolator{bad}, ValidationError);
}

TEST_CASE("a single observation answers every query with its value") {
    const Observation only{GeoCoord{10.0, 20.0}, 7.25};
    Interpolator interp({only});
    const std::vector<GeoCoord> queries{GeoCoord{0.0, 0.0}, GeoCoord{-45.0, 170.0},
                                        GeoCoord{10.0, 20.0}};
    for (const auto name : interp_function_names()) {
        const InterpFunction* fn = find_interp_function(name);
        REQUIRE(fn != nullptr);
        const std::vector<Observation> out = interp.interpolate(queries, 1, *fn);
        REQUIRE(out.size() == queries.size());
        for (const Observation& o : out) {
            CHECK(o.value == doctest::Approx(7.25).epsilon(1e-12));
        }
    }
}

TEST_CASE("the worked usage example reproduces its published estimates") {
    Interpolator interp(example_observations());
    const std::vector<GeoCoord> queries = example_queries();
    const std::vector<Observation> out = interp.interpolate(queries, 4);
    REQUIRE(out.size() == 5);

    // Queries, in order: (30,0), (0,-120), (0,0), (0,120), (-30,0).
    CHECK(out[2].value == 12.5);  // equidistant from all four stations
    CHECK(out[1].value == doctest::Approx(14.684807348584169).epsilon(1e-12));
    CHECK(std::abs(out[1].value - 14.684806) < 1e-5);
    CHECK(out[3].value == doctest::Approx(10.315192651415833).epsilon(1e-12));
    CHECK(std::abs(out[3].value - 10.315192) < 1e-5);
    // The off-equator queries sit between stations valued in [0, 20]; their
    // estimates must stay inside that hull.
    for (const std::size_t i : {std::size_t{0}, std::size_t{4}}) {
        CHECK(out[i].value >= 0.0);
        CHECK(out[i].value <= 20.0);
    }
    // Coordinates come back exactly as passed.
    for (std::size_t i = 0; i < queries.size(); ++i) {
        CHECK(out[i].coord.lat == queries[i].lat);
        CHECK(out[i].coord.lng == queries[i].lng);
    }
}

TEST_CASE("oversized k clamps to the observation count with a warning") {
    Interpolator interp(example_observations());
    const std::vector<GeoCoord> queries = example_queries();

    std::vector<std::string> warnings;
    const std::vector<Observation> clamped = interp.interpolate(
        queries, 20, *find_interp_function("nddnisd"),
        [&](const std::string& message) { warnings.push_back(message); });
    REQUIRE(warnings.size() == 1);
    CHECK(contains(warnings[0], "clamping k to 4"));
    CHECK(contains(warnings[0], "k = 20"));

    warnings.clear();
    const std::vector<Observation> exact = interp.interpolate(
        queries, 4, *find_interp_function("nddnisd"),
        [&](const std::string& message) { warnings.push_back(message); });
    CHECK(warnings.empty());  // no warning when k fits

    REQUIRE(clamped.size() == exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
        CHECK(clamped[i].value == exact[i].value);
    }
}

TEST_CASE("invalid queries and invalid k are rejected") {
    Interpolator interp(example_observations());
    CHECK_THROWS_WITH_AS(interp.interpolate(std::vector<GeoCoord>{}, 2),
                         doctest::Contains("no queries"), ValidationError);
    const std::vector<GeoCoord> one{GeoCoord{0.0, 0.0}};
    CHECK_THROWS_AS(interp.interpolate(one, 0), ValidationError);
    CHECK_THROWS_AS(interp.interpolate(one, -3), ValidationError);
    const std::vector<GeoCoord> bad{GeoCoord{95.0, 0.0}};
    CHECK_THROWS_WITH_AS(interp.interpolate(bad, 1), doctest::Contains("lat"),
                         ValidationError);
}

TEST_CASE("query order is irrelevant: results permute with the queries") {
    RandomStream rng(50);
    Interpolator interp(random_observations(rng, 300));
    std::vector<GeoCoord> queries;
    for (int i = 0; i < 40; ++i) {
        queries.push_back(uniform_sphere_coord(rng));
    }
    const std::vector<Observation> forward = interp.interpolate(queries, 7);
    std::vector<GeoCoord> reversed(queries.rbegin(), queries.rend());
    const std::vector<Observation> backward = interp.interpolate(reversed, 7);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        CHECK(forward[i].value == backward[queries.size() - 1 - i].value);
    }
}

TEST_CASE("observation order is irrelevant on tie-free data") {
    RandomStream rng(51);
    const std::vector<Observation> obs = random_observations(rng, 400);
    std::vector<Observation> shuffled = obs;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
    }
    Interpolator a(obs);
    Interpolator b(shuffled);
    std::vector<GeoCoord> queries;
    for (int i = 0; i < 60; ++i) {
        queries.push_back(uniform_sphere_coord(rng));
    }
    for (const auto name : interp_function_names()) {
        const InterpFunction* fn = find_interp_function(name);
        const std::vector<Observation> ra = a.interpolate(queries, 9, *fn);
        const std::vector<Observation> rb = b.interpolate(queries, 9, *fn);
        for (std::size_t i = 0; i < queries.size(); ++i) {
            CHECK(ra[i].value == rb[i].value);
        }
    }
}

TEST_CASE("estimates never leave the observed value range") {
    RandomStream rng(52);
    const std::vector<Observation> obs = random_observations(rng, 250);
    double lo = obs.front().value;
    double hi = lo;
    for (const Observation& o : obs) {
        lo = std::min(lo, o.value);
        hi = std::max(hi, o.value);
    }
    Interpolator interp(obs);
    std::vector<GeoCoord> queries;
    for (int i = 0; i < 200; ++i) {
        queries.push_back(uniform_sphere_coord(rng));
    }
    for (const auto name : interp_function_names()) {
        for (const int k : {1, 5, 20}) {
            const std::vector<Observation> out =
                interp.interpolate(queries, k, *find_interp_function(name));
            for (const Observation& o : out) {
                CHECK(o.value >= lo - 1e-9);
                CHECK(o.value <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("k = 1 collapses all interpolation functions to the same answer") {
    RandomStream rng(53);
    Interpolator interp(random_observations(rng, 150));
    std::vector<GeoCoord> queries;
    for (int i = 0; i < 50; ++i) {
        queries.push_back(uniform_sphere_coord(rng));
    }
    const std::vector<Observation> reference =
        interp.interpolate(queries, 1, *find_interp_function("nearest"));
    for (const auto name : interp_function_names()) {
        const std::vector<Observation> out =
            interp.interpolate(queries, 1, *find_interp_function(name));
        for (std::size_t i = 0; i < queries.size(); ++i) {
            CHECK(out[i].value ==
                  doctest::Approx(reference[i].value).epsilon(1e-12));
        }
    }
}

TEST_CASE("neighborhood rows come back distance-sorted") {
    RandomStream rng(54);
    Interpolator interp(random_observations(rng, 500));
    std::vector<GeoCoord> queries;
    for (int i = 0; i < 100; ++i) {
        queries.push_back(uniform_sphere_coord(rng));
    }
    const NeighborhoodView view = interp.neighborhoods(queries, 12);
    REQUIRE(view.rows == queries.size());
    REQUIRE(view.cols == 12);
    const std::vector<double> delta = proximal_distances(view, interp.radius());
    const double slack = 1e-9 * interp.radius().value();
    for (std::size_t i = 0; i < view.rows; ++i) {
        for (std::size_t j = 1; j < view.cols; ++j) {
            CHECK(delta[view.at(i, j)] >= delta[view.at(i, j - 1)] - slack);
        }
    }
}

TEST_CASE("queries echo their original coordinates, not normalized ones") {
    Interpolator interp(example_observations());
    const std::vector<GeoCoord> as_given{GeoCoord{0.0, 180.0}, GeoCoord{90.0, 50.0}};
    const std::vector<GeoCoord> normalized{GeoCoord{0.0, -180.0},
                                           GeoCoord{std::nextafter(90.0, 0.0), 50.0}};
    const std::vector<Observation> a = interp.interpolate(as_given, 4);
    const std::vector<Observation> b = interp.interpolate(normalized, 4);
    CHECK(a[0].coord.lng == 180.0);   // echoed, not folded to -180
    CHECK(a[1].coord.lat == 90.0);    // echoed, not nudged off the pole
    CHECK(a[0].value == b[0].value);  // but interpolation sees the same point
    CHECK(a[1].value == b[1].value);
}

TEST_CASE("the default interpolate overload runs the weighted function") {
    Interpolator interp(example_observations());
    const std::vector<GeoCoord> queries = example_queries();
    const std::vector<Observation> by_default = interp.interpolate(queries, 4);
    const std::vector<Observation> by_name =
        interp.interpolate(queries, 4, *find_interp_function("nddnisd"));
    for (std::size_t i = 0; i < queries.size(); ++i) {
        CHECK(by_default[i].value == by_name[i].value);
    }
}

TEST_CASE("the embedding mode changes which neighbors are found") {
    // Under the fold-prone embedding, (-30, 180) lands on the same embedded
    // point as (30, 0); under the injective default it stays far away.
    const std::vector<Observation> obs{Observation{GeoCoord{29.0, 0.0}, 1.0},
                                       Observation{GeoCoord{-30.0, 180.0}, 2.0}};
    const std::vector<GeoCoord> query{GeoCoord{30.0, 0.0}};

    Interpolator standard(obs, SphereRadius{}, EmbeddingMode::Standard);
    Interpolator folded(obs, SphereRadius{}, EmbeddingMode::PaperFaithful);
    CHECK(standard.interpolate(query, 1, *find_interp_function("nearest"))[0]
              .value == 1.0);
    CHECK(folded.interpolate(query, 1, *find_interp_function("nearest"))[0]
              .value == 2.0);
}
