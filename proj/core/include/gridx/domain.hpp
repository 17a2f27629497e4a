#pragma once

// Typed, validated model inputs shared by every other module.
//
// Units: capacities in MW, energy in MWh, money in USD. Catalog costs are
// stored per MW; the ingest layer converts $/kW inputs on load.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridx {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr int kHoursPerDay = 24;
inline constexpr int kDaysPerYear = 365;
inline constexpr int kHoursPerYear = kHoursPerDay * kDaysPerYear;

using BusId = int;
using RegionId = std::string;

struct LatLon {
    double latitude = 0.0;
    double longitude = 0.0;
    friend bool operator==(const LatLon&, const LatLon&) = default;
};

// ---------------------------------------------------------------------------
// Technologies

enum class TechKind : std::uint8_t { Nuclear, Coal, NaturalGas, Solar, Wind, Hydro };
enum class TechClass : std::uint8_t { Thermal, Renewable };

inline constexpr std::array<TechKind, 6> kAllTechs = {
    TechKind::Nuclear, TechKind::Coal, TechKind::NaturalGas,
    TechKind::Solar,   TechKind::Wind, TechKind::Hydro};

constexpr TechClass tech_class(TechKind kind) noexcept {
    switch (kind) {
    case TechKind::Nuclear:
    case TechKind::Coal:
    case TechKind::NaturalGas: return TechClass::Thermal;
    default: return TechClass::Renewable;
    }
}
constexpr bool is_thermal(TechKind kind) noexcept { return tech_class(kind) == TechClass::Thermal; }
constexpr std::size_t tech_index(TechKind kind) noexcept { return static_cast<std::size_t>(kind); }

/// Config key, e.g. "natural_gas".
std::string_view to_string(TechKind kind) noexcept;
/// Human readable row label, e.g. "Natural gas".
std::string_view display_name(TechKind kind) noexcept;
/// Short code used in LP column names, e.g. "ng".
std::string_view short_code(TechKind kind) noexcept;
/// Accepts config keys, display names and short codes (case-insensitive).
std::optional<TechKind> parse_tech(std::string_view text);
TechKind parse_tech_or_throw(std::string_view text);

// ---------------------------------------------------------------------------
// Grid

struct Bus {
    BusId id = 0;
    double latitude = 0.0;
    double longitude = 0.0;
    std::optional<RegionId> county;

    LatLon location() const noexcept { return {latitude, longitude}; }
    friend bool operator==(const Bus&, const Bus&) = default;
};

struct Generator {
    BusId bus = 0;
    TechKind tech = TechKind::NaturalGas;
    double initial_capacity_mw = 0.0;
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Bidirectional transmission corridor; `from < to` after aggregation.
struct Line {
    BusId from = 0;
    BusId to = 0;
    double reactance_pu = 0.0;
    double initial_capacity_mw = 0.0;
    std::optional<double> length_mi;
    friend bool operator==(const Line&, const Line&) = default;
};

struct GridTopology {
    std::vector<Bus> buses;             // ids dense 0..N-1, sorted by id
    std::vector<Generator> generators;  // sorted by (bus, tech), unique pairs
    std::vector<Line> lines;            // sorted by (from, to), unique pairs
    std::vector<double> initial_storage_mw; // one per bus; empty means all zero

    std::size_t num_buses() const noexcept { return buses.size(); }
    double initial_storage(BusId bus) const noexcept {
        return initial_storage_mw.empty() ? 0.0 : initial_storage_mw[static_cast<std::size_t>(bus)];
    }
    friend bool operator==(const GridTopology&, const GridTopology&) = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Structural checks: dense ids, coordinate ranges, unknown or duplicate
/// references, nonpositive reactance, buses unreachable from bus 0.
ValidationReport validate_topology(const GridTopology& topology);

/// Merge parallel generators per (bus, tech) and parallel lines per unordered
/// bus pair. Capacities add; merged reactances combine as parallel
/// impedances (1/X = sum 1/X_i). Throws InputError on mixed reactance signs.
GridTopology aggregate_raw_grid(std::vector<Bus> buses,
                                std::span<const Generator> raw_generators,
                                std::span<const Line> raw_lines,
                                std::vector<double> initial_storage_mw = {});

// ---------------------------------------------------------------------------
// Planning horizon

/// Consecutive calendar years. Model index t runs 0..size()-1; lead-time
/// arithmetic always works on indices.
class Horizon {
public:
    Horizon() = default;
    explicit Horizon(std::vector<int> years);

    std::size_t size() const noexcept { return years_.size(); }
    bool empty() const noexcept { return years_.empty(); }
    int year(std::size_t t) const { return years_.at(t); }
    const std::vector<int>& years() const noexcept { return years_; }
    std::optional<std::size_t> index_of(int year) const noexcept;

    friend bool operator==(const Horizon&, const Horizon&) = default;

private:
    std::vector<int> years_;
};

// ---------------------------------------------------------------------------
// Technology catalog and economics

struct TechYearCosts {
    double capex_per_mw = 0.0;        // alpha_gen, $/MW
    double fom_per_mw_year = 0.0;     // beta_gen, $/MW-yr
    double vom_per_mwh = 0.0;         // gamma_gen, thermal only
    double fuel_per_mmbtu = 0.0;      // gamma_fuel, thermal only
    double heat_rate_mmbtu_per_mwh = 0.0;

    /// gamma_hat = VOM + fuel price * heat rate.
    double variable_cost_per_mwh() const noexcept {
        return vom_per_mwh + fuel_per_mmbtu * heat_rate_mmbtu_per_mwh;
    }
    friend bool operator==(const TechYearCosts&, const TechYearCosts&) = default;
};

struct TechCatalogEntry {
    TechKind kind = TechKind::NaturalGas;
    int lead_time_years = 0;
    double f_min = 0.0;
    double f_max = 1.0;
    double ramp = 1.0;                      // fraction of capacity per hour
    std::optional<int> earliest_build_year; // no new builds before this year
    std::map<int, TechYearCosts> costs_by_year;

    const TechYearCosts& costs(int year) const;
    friend bool operator==(const TechCatalogEntry&, const TechCatalogEntry&) = default;
};

class TechCatalog {
public:
    void set(TechCatalogEntry entry);
    bool contains(TechKind kind) const noexcept { return entries_[tech_index(kind)].has_value(); }
    const TechCatalogEntry& at(TechKind kind) const;
    TechCatalogEntry& at(TechKind kind);
    std::vector<TechKind> kinds() const;

    friend bool operator==(const TechCatalog&, const TechCatalog&) = default;

private:
    std::array<std::optional<TechCatalogEntry>, kAllTechs.size()> entries_{};
};

struct StorageYearCosts {
    double capex_per_mw = 0.0;
    double fom_per_mw_year = 0.0;
    friend bool operator==(const StorageYearCosts&, const StorageYearCosts&) = default;
};

inline constexpr double kDefaultRoundTripEfficiency = 0.85;

struct StorageParams {
    int lead_time_years = 1;
    double duration_hours = 4.0;
    double eta_charge = std::sqrt(kDefaultRoundTripEfficiency);
    double eta_discharge = std::sqrt(kDefaultRoundTripEfficiency);
    std::map<int, StorageYearCosts> costs_by_year;

    double round_trip_efficiency() const noexcept { return eta_charge * eta_discharge; }
    const StorageYearCosts& costs(int year) const;
    friend bool operator==(const StorageParams&, const StorageParams&) = default;
};

struct EconParams {
    double interest_rate = 0.0;
    int base_year = 2022;
    double demand_curtail_cost = 5000.0; // delta, $/MWh
    double gen_curtail_cost = 100.0;     // zeta, $/MWh
    double s_base_mva = 100.0;
    int transmission_lead_time_years = 3;
    std::map<int, double> trans_capex_per_mw_mile; // alpha_trans by year
    double max_new_gen_mw = kInfinity;
    double max_new_trans_mw = kInfinity;
    double max_new_storage_mw = kInfinity;

    double trans_capex(int year) const;
    /// (1 + Ir)^-(year - base_year)
    double discount_factor(int year) const noexcept;
    friend bool operator==(const EconParams&, const EconParams&) = default;
};

// ---------------------------------------------------------------------------
// Demand scenario

/// Per-year series are aligned with the horizon (index t).
struct DemandScenario {
    std::vector<double> base_energy_twh;     // E_base_t
    std::optional<double> base_energy_t0_twh; // energy of the initial profile; derived when absent
    std::vector<double> dc_peak_gw;          // P_DC_t
    double dc_load_factor = 0.9;             // LF_DC
    std::map<RegionId, double> dc_shares;    // psi_c
    double manufacturing_heat_gw = 0.0;      // Q_M
    std::vector<double> electrification;     // phi_t
    double eta_elec = 0.97;
    std::map<RegionId, double> em_shares;    // psi_e
    std::vector<double> base_peak_gw;        // P_base_peak_t

    friend bool operator==(const DemandScenario&, const DemandScenario&) = default;
};

/// Throws InputError when shares don't sum to one (1e-9) or a value is negative.
void validate_shares(const std::map<RegionId, double>& shares, std::string_view what);

// ---------------------------------------------------------------------------
// Settings

enum class ProfileKind : std::uint8_t { Mean, Medoid };

struct ClusteringSettings {
    int k = 5;
    std::uint64_t seed = 7;
    int restarts = 10;
    int max_iterations = 300;
    ProfileKind profile = ProfileKind::Mean;
    friend bool operator==(const ClusteringSettings&, const ClusteringSettings&) = default;
};

struct SolverSettings {
    std::string backend = "simplex"; // "simplex" or "external"
    double tolerance = 1e-7;
    std::optional<std::int64_t> max_iterations;
    std::string command; // external backend template with {mps} and {solution}
    friend bool operator==(const SolverSettings&, const SolverSettings&) = default;
};

enum class StorageInitialState : std::uint8_t {
    Cyclic, // first hour of day 1 follows the last hour of the last day
    Free,   // a free starting level in [0, C*H] each year
};

struct PlannerSettings {
    bool forbid_stranded_investment = false;
    StorageInitialState storage_initial_state = StorageInitialState::Cyclic;
    friend bool operator==(const PlannerSettings&, const PlannerSettings&) = default;
};

struct ScenarioConfig {
    Horizon horizon;
    EconParams econ;
    StorageParams storage;
    TechCatalog techs;
    DemandScenario demand;
    ClusteringSettings clustering;
    SolverSettings solver;
    PlannerSettings planner;
    std::filesystem::path data_dir; // where the CSV inputs live

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Cross-field checks on a populated scenario; throws InputError.
void validate_scenario(const ScenarioConfig& scenario);

// ---------------------------------------------------------------------------
// Parameter table

/// One row of the model-parameter table: which domain type owns a symbol.
struct ParameterBinding {
    std::string_view symbol;
    std::string_view owner;
    std::string_view field;
    std::string_view unit;
};

std::span<const ParameterBinding> parameter_table() noexcept;

} // namespace gridx
