#include "doctest.h"

#include "gridx/error.hpp"
#include "gridx/spatial.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gridx;

namespace {

// Chord-length form of the great-circle distance through 3-D unit vectors.
double chord_miles(LatLon a, LatLon b) {
    auto unit = [](LatLon p) {
        const double lat = p.latitude * std::numbers::pi / 180.0;
        const double lon = p.longitude * std::numbers::pi / 180.0;
        return std::array<double, 3>{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    };
    const auto u = unit(a), v = unit(b);
    const double chord =
        std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) + (u[2] - v[2]) * (u[2] - v[2]));
    return 2.0 * kEarthRadiusMiles * std::asin(std::min(1.0, chord / 2.0));
}

Bus bus(BusId id, double lat, double lon) { return {id, lat, lon, std::nullopt}; }

} // namespace

TEST_CASE("great-circle distance") {
    const LatLon austin{30.2672, -97.7431}, houston{29.7604, -95.3698};
    CHECK(haversine_miles(austin, austin) == 0.0);
    CHECK(haversine_miles(austin, houston) == doctest::Approx(146.3).epsilon(0.5 / 146.3));
    CHECK(haversine_miles(austin, houston) == doctest::Approx(chord_miles(austin, houston)).epsilon(1e-10));
    CHECK(haversine_miles({0, 0}, {0, 180}) == doctest::Approx(std::numbers::pi * kEarthRadiusMiles).epsilon(1e-12));
    CHECK(haversine_miles({10, 20}, {-10, -160}) == doctest::Approx(12436.0).epsilon(1.0 / 12436.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lat(-89.0, 89.0), lon(-180.0, 180.0);
    for (int i = 0; i < 200; ++i) {
        const LatLon a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)};
        CHECK(haversine_miles(a, b) == doctest::Approx(chord_miles(a, b)).epsilon(1e-9));
        CHECK(haversine_miles(a, b) == haversine_miles(b, a));
    }
}

TEST_CASE("bus assignment") {
    const std::map<RegionId, LatLon> centroids{{"A", {30.0, -97.0}}, {"B", {30.0, -95.0}}};
    SUBCASE("bus at a centroid") {
        const auto m = assign_buses({bus(0, 30.0, -95.0)}, centroids);
        CHECK(m.bus_region[0] == "B");
    }
    SUBCASE("explicit entry wins") {
        const auto m = assign_buses({bus(0, 30.0, -95.0)}, centroids, {{0, "A"}});
        CHECK(m.bus_region[0] == "A");
    }
    SUBCASE("county on the bus record beats the fallback") {
        Bus b = bus(0, 30.0, -95.0);
        b.county = "A";
        CHECK(assign_buses({b}, centroids).bus_region[0] == "A");
    }
    SUBCASE("three buses, two counties, brute-force nearest") {
        const std::vector<Bus> buses{bus(0, 30.1, -96.9), bus(1, 29.5, -95.4), bus(2, 31.0, -96.1)};
        const auto m = assign_buses(buses, centroids);
        for (const auto& b : buses) {
            RegionId best;
            double best_d = 1e300;
            for (const auto& [id, c] : centroids) {
                const double d = chord_miles(b.location(), c);
                if (d < best_d) best_d = d, best = id;
            }
            CHECK(m.bus_region[static_cast<std::size_t>(b.id)] == best);
        }
        CHECK(m.buses_in("A") == std::vector<BusId>{0, 2});
        CHECK(m.buses_in("B") == std::vector<BusId>{1});
    }
    SUBCASE("equidistant bus goes to the lower id") {
        const auto m = assign_buses({bus(0, 30.0, -96.0)}, centroids);
        CHECK(m.bus_region[0] == "A");
    }
    SUBCASE("no centroids and no mapping") { CHECK_THROWS_AS(assign_buses({bus(0, 30, -96)}, {}), InputError); }
}

TEST_CASE("reallocation of empty regions") {
    const std::map<RegionId, LatLon> centroids{
        {"W", {30.0, -100.0}}, {"X", {30.0, -98.2}}, {"Y", {30.0, -98.0}}, {"Z", {30.0, -97.6}}, {"V", {30.0, -94.0}}};
    const auto map = assign_buses({bus(0, 30.0, -98.0), bus(1, 30.0, -94.0)}, centroids, {{0, "Y"}, {1, "V"}});

    SUBCASE("identity when every region has buses") {
        const std::map<RegionId, double> psi{{"Y", 0.4}, {"V", 0.6}};
        const auto r = reallocate_empty_regions(psi, map);
        CHECK(r.shares == psi);
        CHECK(r.moved.empty());
        CHECK(reallocate_empty_regions(r.shares, map).shares == r.shares);
    }
    SUBCASE("additive move") {
        const auto r = reallocate_empty_regions({{"X", 0.2}, {"Y", 0.3}, {"V", 0.5}}, map);
        CHECK(r.shares.size() == 2);
        CHECK(r.shares.at("Y") == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(r.moved.at("X") == "Y");
    }
    SUBCASE("chained empty regions move in one hop") {
        // W is nearest to X, but X has no bus, so W goes straight to Y.
        const auto r = reallocate_empty_regions({{"W", 0.1}, {"X", 0.2}, {"Z", 0.3}, {"V", 0.4}}, map);
        CHECK(r.moved.at("W") == "Y");
        CHECK(r.moved.at("X") == "Y");
        CHECK(r.moved.at("Z") == "Y");
        double total = 0.0;
        for (const auto& [id, s] : r.shares) total += s;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
        for (const auto& [id, s] : r.shares) {
            CHECK(s > 0.0);
            CHECK(map.has_buses(id));
        }
    }
    SUBCASE("zero shares drop out") {
        const auto r = reallocate_empty_regions({{"Y", 1.0}, {"V", 0.0}}, map);
        CHECK(r.shares.size() == 1);
    }
}

TEST_CASE("reallocation needs at least one bus-bearing region") {
    RegionMap empty;
    empty.centroids = {{"A", {30, -97}}};
    CHECK_THROWS_AS(reallocate_empty_regions({{"A", 1.0}}, empty), InputError);
}
