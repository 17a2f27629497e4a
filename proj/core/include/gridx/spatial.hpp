#pragma once

// Bus-to-county mapping and relocation of large-load shares away from
// counties that contain no bus.

#include "gridx/domain.hpp"

#include <map>
#include <string>
#include <vector>

namespace gridx {

inline constexpr double kEarthRadiusMiles = 3958.761;

double haversine_miles(LatLon a, LatLon b) noexcept;

struct RegionMap {
    std::vector<RegionId> bus_region;            // indexed by bus id
    std::map<RegionId, LatLon> centroids;
    std::map<RegionId, std::vector<BusId>> buses; // only regions with at least one bus

    bool has_buses(const RegionId& region) const { return buses.contains(region); }
    const std::vector<BusId>& buses_in(const RegionId& region) const;
};

/// Precedence: `explicit_map`, then Bus::county, then the nearest centroid
/// (ties to the lower region id). Throws InputError when a bus can't be
/// placed.
RegionMap assign_buses(const std::vector<Bus>& buses, const std::map<RegionId, LatLon>& centroids,
                       const std::map<BusId, RegionId>& explicit_map = {});

struct Reallocation {
    std::map<RegionId, double> shares;  // effective shares, all > 0, every region has a bus
    std::map<RegionId, RegionId> moved; // empty region -> receiving region
};

/// Each share held by a region without buses moves in one hop to the nearest
/// region (centroid to centroid) that has a bus; ties go to the lower id.
Reallocation reallocate_empty_regions(const std::map<RegionId, double>& shares, const RegionMap& map);

std::string region_map_to_json(const RegionMap& map, const Reallocation& dc, const Reallocation& em);

} // namespace gridx
