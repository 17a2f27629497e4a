#pragma once

// File formats: one JSON scenario file for scalars and per-tech/per-year
// tables, CSV for everything tabular. See README for the full key list.

#include "gridx/domain.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gridx {

/// Hourly series (8760 values) keyed by bus id.
struct ProfileMatrix {
    std::vector<BusId> entities; // sorted ascending
    std::vector<std::vector<double>> values;

    bool empty() const noexcept { return entities.empty(); }
    std::size_t size() const noexcept { return entities.size(); }
    const std::vector<double>* find(BusId bus) const noexcept;
    friend bool operator==(const ProfileMatrix&, const ProfileMatrix&) = default;
};

struct ProfileSet {
    ProfileMatrix base_load; // MW
    ProfileMatrix cf_solar;  // [0, 1]
    ProfileMatrix cf_wind;   // [0, 1]
};

enum class ProfileUnit { Megawatts, CapacityFactor };

/// Capacity factors up to this value are treated as source rounding and clamped to 1.
inline constexpr double kCapacityFactorSlack = 1.0001;

ScenarioConfig load_scenario(const std::filesystem::path& config_path);
ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);
/// Canonical JSON text; parse_scenario(serialize_scenario(s)) reproduces s.
std::string serialize_scenario(const ScenarioConfig& scenario);

/// Reads buses.csv, generators.csv, lines.csv and the optional storage.csv,
/// merges parallel assets and throws InputError if validation fails.
GridTopology load_topology(const std::filesystem::path& dir);

ProfileMatrix load_profile_matrix(const std::filesystem::path& path, std::size_t num_buses, ProfileUnit unit);
ProfileMatrix parse_profile_matrix(std::string_view csv_text, std::size_t num_buses, ProfileUnit unit,
                                   std::string_view source = "<memory>");

/// base_load.csv is required; cf_solar.csv / cf_wind.csv are optional.
ProfileSet load_profiles(const std::filesystem::path& dir, std::size_t num_buses);

std::map<RegionId, double> load_shares(const std::filesystem::path& path);
std::map<RegionId, LatLon> load_centroids(const std::filesystem::path& path);
std::map<BusId, RegionId> load_bus_regions(const std::filesystem::path& path);

} // namespace gridx
