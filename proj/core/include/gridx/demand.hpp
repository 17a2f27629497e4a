#pragma once

// Demand synthesis. Annual energies are turned into constant average power:
// the base increment spreads (E_t - E_t0) evenly over all buses and 8760
// hours, data-center load is psi * P_DC * LF, and electrified manufacturing
// is psi * Q_M * phi_t / eta_elec. Both large loads are flat within a year.

#include "gridx/cluster.hpp"
#include "gridx/domain.hpp"
#include "gridx/spatial.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gridx {

/// Per-bus MW added to every hour so the annual total grows by E_t - E_t0.
double base_increment_mw(double energy_twh, double energy_t0_twh, std::size_t num_buses);

/// System-wide data-center load in MW.
double dc_system_mw(double peak_gw, double load_factor);
/// System-wide electrified manufacturing load in MW.
double em_system_mw(double heat_gw, double phi, double eta_elec);

/// P_peak_t in MW: base peak + data-center peak + electrified heat.
std::vector<double> compute_peak(const DemandScenario& demand);

/// Annual energy of an 8760-hour load matrix in TWh.
double profile_energy_twh(const ProfileMatrix& load);

struct DemandCube {
    std::size_t num_years = 0;
    std::size_t num_days = 0;
    std::size_t num_buses = 0;
    std::vector<int> day_weight;            // w_d
    std::vector<double> base;               // [t][d][n][h], MW
    std::vector<RegionId> dc_regions;       // sorted
    std::vector<double> dc;                 // [c][t], MW, flat over (d, h)
    std::vector<RegionId> em_regions;       // sorted
    std::vector<double> em;                 // [e][t], MW, flat over (d, h)
    std::vector<double> peak;               // [t], MW

    std::size_t base_offset(std::size_t t, int d, BusId n, int h) const {
        return ((t * num_days + static_cast<std::size_t>(d)) * num_buses + static_cast<std::size_t>(n)) *
                   kHoursPerDay +
               static_cast<std::size_t>(h);
    }
    double base_at(std::size_t t, int d, BusId n, int h) const { return base[base_offset(t, d, n, h)]; }
    double dc_at(std::size_t c, std::size_t t) const { return dc[c * num_years + t]; }
    double em_at(std::size_t e, std::size_t t) const { return em[e * num_years + t]; }

    /// Weighted annual energies in MWh.
    double base_energy_mwh(std::size_t t) const;
    double dc_energy_mwh(std::size_t t) const;
    double em_energy_mwh(std::size_t t) const;
    double total_energy_mwh(std::size_t t) const;

    friend bool operator==(const DemandCube&, const DemandCube&) = default;
};

/// [t][d][n][h] base load. Throws InputError if any hour goes negative.
std::vector<double> build_base_load(const RepresentativeDays& days, const std::vector<double>& energy_twh,
                                    double energy_t0_twh);

/// Per region, per year MW.
std::map<RegionId, std::vector<double>> build_dc_load(const std::vector<double>& peak_gw, double load_factor,
                                                      const std::map<RegionId, double>& shares);
std::map<RegionId, std::vector<double>> build_em_load(double heat_gw, const std::vector<double>& phi,
                                                      double eta_elec, const std::map<RegionId, double>& shares);

DemandCube build_demand_cube(const DemandScenario& demand, const RepresentativeDays& days,
                             const std::map<RegionId, double>& dc_shares, const std::map<RegionId, double>& em_shares,
                             double energy_t0_twh);

/// Little-endian binary: "GXDC", version, dimensions, region names, values.
void write_demand_cube(const DemandCube& cube, const std::filesystem::path& path);
DemandCube read_demand_cube(const std::filesystem::path& path);

/// One CSV per year: kind,location,day,hour,mw.
void write_demand_audit(const DemandCube& cube, const Horizon& horizon, const std::filesystem::path& dir);

} // namespace gridx
