#include "gridx/spatial.hpp"

#include "gridx/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace gridx {

double haversine_miles(LatLon a, LatLon b) noexcept {
    constexpr double deg = std::numbers::pi / 180.0;
    const double phi1 = a.latitude * deg;
    const double phi2 = b.latitude * deg;
    const double dphi = (b.latitude - a.latitude) * deg;
    const double dlambda = (b.longitude - a.longitude) * deg;
    const double s = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
    return 2.0 * kEarthRadiusMiles * std::asin(std::min(1.0, std::sqrt(s)));
}

const std::vector<BusId>& RegionMap::buses_in(const RegionId& region) const {
    static const std::vector<BusId> none;
    auto it = buses.find(region);
    return it == buses.end() ? none : it->second;
}

RegionMap assign_buses(const std::vector<Bus>& buses, const std::map<RegionId, LatLon>& centroids,
                       const std::map<BusId, RegionId>& explicit_map) {
    RegionMap map;
    map.centroids = centroids;
    map.bus_region.resize(buses.size());
    for (const auto& bus : buses) {
        RegionId region;
        if (auto it = explicit_map.find(bus.id); it != explicit_map.end()) {
            region = it->second;
        } else if (bus.county) {
            region = *bus.county;
        } else {
            if (centroids.empty()) {
                throw InputError(fmt::format("bus {} has no county and no centroids are available", bus.id));
            }
            double best = std::numeric_limits<double>::infinity();
            for (const auto& [id, point] : centroids) {
                const double d = haversine_miles(bus.location(), point);
                if (d < best) {
                    best = d;
                    region = id;
                }
            }
        }
        map.bus_region.at(static_cast<std::size_t>(bus.id)) = region;
        map.buses[region].push_back(bus.id);
    }
    return map;
}

Reallocation reallocate_empty_regions(const std::map<RegionId, double>& shares, const RegionMap& map) {
    if (map.buses.empty()) {
        throw InputError("no region contains a bus");
    }
    Reallocation out;
    for (const auto& [region, share] : shares) {
        if (share <= 0.0) continue;
        if (map.has_buses(region)) {
            out.shares[region] += share;
            continue;
        }
        const auto from = map.centroids.find(region);
        if (from == map.centroids.end()) {
            throw InputError(fmt::format("region '{}' has no bus and no centroid", region));
        }
        const RegionId* target = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [candidate, members] : map.buses) {
            const auto to = map.centroids.find(candidate);
            if (to == map.centroids.end()) continue;
            const double d = haversine_miles(from->second, to->second);
            if (d < best) {
                best = d;
                target = &candidate;
            }
        }
        if (!target) {
            throw InputError(fmt::format("no bus-bearing region with a centroid to receive '{}'", region));
        }
        out.shares[*target] += share;
        out.moved[region] = *target;
    }
    return out;
}

std::string region_map_to_json(const RegionMap& map, const Reallocation& dc, const Reallocation& em) {
    using nlohmann::json;
    json root;
    json buses = json::object();
    for (std::size_t b = 0; b < map.bus_region.size(); ++b) {
        buses[std::to_string(b)] = map.bus_region[b];
    }
    root["bus_region"] = buses;
    json regions = json::object();
    for (const auto& [region, members] : map.buses) {
        regions[region] = members;
    }
    root["region_buses"] = regions;
    root["dc"] = {{"shares", dc.shares}, {"moved", dc.moved}};
    root["em"] = {{"shares", em.shares}, {"moved", em.moved}};
    return root.dump(2) + "\n";
}

} // namespace gridx
