#pragma once

// In-memory planning problems for tests. Every helper returns fully
// populated, validated structures without touching the filesystem.

#include "gridx/cluster.hpp"
#include "gridx/demand.hpp"
#include "gridx/domain.hpp"
#include "gridx/planner.hpp"
#include "gridx/spatial.hpp"

#include <functional>
#include <map>
#include <vector>

namespace gridx::testing {

/// Every tech gets the same cost entry each year unless overridden later.
inline TechCatalogEntry tech_entry(TechKind kind, int lead, double capex_per_mw, double fom, double var_cost,
                                   const std::vector<int>& years) {
    TechCatalogEntry e;
    e.kind = kind;
    e.lead_time_years = lead;
    if (is_thermal(kind)) {
        e.f_min = 0.0;
        e.f_max = 1.0;
        e.ramp = 1.0;
    }
    for (int y : years) e.costs_by_year[y] = TechYearCosts{capex_per_mw, fom, var_cost, 0.0, 0.0};
    return e;
}

/// Zero-interest scenario with no large loads and uncapped investment.
inline ScenarioConfig base_scenario(const std::vector<int>& years) {
    ScenarioConfig s;
    s.horizon = Horizon(years);
    s.econ.interest_rate = 0.0;
    s.econ.base_year = years.front();
    s.econ.demand_curtail_cost = 5000.0;
    s.econ.gen_curtail_cost = 100.0;
    s.econ.transmission_lead_time_years = 0;
    for (int y : years) s.econ.trans_capex_per_mw_mile[y] = 1000.0;
    s.storage.lead_time_years = 0;
    for (int y : years) s.storage.costs_by_year[y] = StorageYearCosts{1e9, 0.0};
    s.demand.base_energy_twh.assign(years.size(), 0.0);
    s.demand.dc_peak_gw.assign(years.size(), 0.0);
    s.demand.electrification.assign(years.size(), 0.0);
    s.demand.base_peak_gw.assign(years.size(), 0.0);
    s.clustering.k = 1;
    return s;
}

inline std::vector<Bus> line_of_buses(int n) {
    std::vector<Bus> buses;
    for (int i = 0; i < n; ++i) buses.push_back({i, 30.0, -97.0 + 0.5 * i, std::nullopt});
    return buses;
}

/// Days with weights `weight`, load[d][n][h] from `load`, flat CFs.
inline RepresentativeDays make_days(std::size_t num_buses, const std::vector<int>& weight,
                                    const std::function<double(int, BusId, int)>& load,
                                    const std::function<double(int, BusId, int)>& solar = {},
                                    const std::function<double(int, BusId, int)>& wind = {}) {
    RepresentativeDays days;
    days.k = static_cast<int>(weight.size());
    days.num_buses = num_buses;
    days.weight = weight;
    days.exemplar.assign(weight.size(), 0);
    const std::size_t size = weight.size() * num_buses * kHoursPerDay;
    days.base_load.assign(size, 0.0);
    days.cf_solar.assign(size, 0.0);
    days.cf_wind.assign(size, 0.0);
    days.has_solar.assign(num_buses, solar ? 1 : 0);
    days.has_wind.assign(num_buses, wind ? 1 : 0);
    for (int d = 0; d < days.k; ++d) {
        for (std::size_t n = 0; n < num_buses; ++n) {
            for (int h = 0; h < kHoursPerDay; ++h) {
                const auto o = days.offset(d, static_cast<BusId>(n), h);
                days.base_load[o] = load(d, static_cast<BusId>(n), h);
                if (solar) days.cf_solar[o] = solar(d, static_cast<BusId>(n), h);
                if (wind) days.cf_wind[o] = wind(d, static_cast<BusId>(n), h);
            }
        }
    }
    for (int d = 0; d < days.k; ++d) {
        for (int i = 0; i < weight[static_cast<std::size_t>(d)]; ++i) days.assignment.push_back(d);
    }
    return days;
}

/// Demand cube where the base load of year t is load(t, d, n, h); no large loads.
inline DemandCube make_demand(std::size_t years, const RepresentativeDays& days,
                              const std::function<double(std::size_t, int, BusId, int)>& load,
                              std::vector<double> peak) {
    DemandCube cube;
    cube.num_years = years;
    cube.num_days = static_cast<std::size_t>(days.k);
    cube.num_buses = days.num_buses;
    cube.day_weight = days.weight;
    cube.base.assign(years * cube.num_days * cube.num_buses * kHoursPerDay, 0.0);
    for (std::size_t t = 0; t < years; ++t)
        for (int d = 0; d < days.k; ++d)
            for (std::size_t n = 0; n < cube.num_buses; ++n)
                for (int h = 0; h < kHoursPerDay; ++h)
                    cube.base[cube.base_offset(t, d, static_cast<BusId>(n), h)] = load(t, d, static_cast<BusId>(n), h);
    cube.peak = std::move(peak);
    return cube;
}

inline RegionMap single_region_per_bus(const std::vector<Bus>& buses) {
    std::map<BusId, RegionId> explicit_map;
    for (const auto& b : buses) explicit_map[b.id] = "R" + std::to_string(b.id);
    return assign_buses(buses, {}, explicit_map);
}

inline PlanningProblem make_problem(ScenarioConfig scenario, GridTopology topology, RepresentativeDays days,
                                    DemandCube demand) {
    PlanningProblem p;
    p.regions = single_region_per_bus(topology.buses);
    p.scenario = std::move(scenario);
    p.topology = std::move(topology);
    p.days = std::move(days);
    p.demand = std::move(demand);
    return p;
}

/// ERCOT-scale dimensions: 123 buses, 151 generators (72 thermal), 173 lines,
/// 7 years, 5 days, 38 data-center and 10 manufacturing regions of one bus each.
inline PlanningProblem ercot_scale_problem() {
    const std::vector<int> years{2025, 2026, 2027, 2028, 2029, 2030, 2031};
    auto s = base_scenario(years);
    for (TechKind k : kAllTechs) s.techs.set(tech_entry(k, 3, 1e6, 1e4, 20.0, years));
    s.techs.at(TechKind::Nuclear).earliest_build_year = 2029;
    s.clustering.k = 5;

    GridTopology topo;
    const int N = 123;
    for (int i = 0; i < N; ++i) {
        topo.buses.push_back({i, 26.0 + 0.08 * (i % 11), -106.0 + 0.1 * i, std::nullopt});
    }
    // 151 generators: 60 NG, 10 coal, 2 nuclear, 45 wind, 30 solar, 4 hydro.
    const std::vector<std::pair<TechKind, int>> mix{{TechKind::Nuclear, 2}, {TechKind::Coal, 10},
                                                    {TechKind::NaturalGas, 60}, {TechKind::Solar, 30},
                                                    {TechKind::Wind, 45}, {TechKind::Hydro, 4}};
    std::vector<Generator> gens;
    int cursor = 0;
    for (const auto& [tech, count] : mix) {
        for (int i = 0; i < count; ++i) {
            gens.push_back({cursor % N, tech, 100.0});
            cursor += 7;
        }
    }
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        return std::pair(a.bus, tech_index(a.tech)) < std::pair(b.bus, tech_index(b.tech));
    });
    topo.generators = gens;
    // Spanning path plus 51 chords.
    for (int i = 0; i + 1 < N; ++i) topo.lines.push_back({i, i + 1, 0.05, 500.0, std::nullopt});
    for (int i = 0; i < 51; ++i) topo.lines.push_back({i, i + 2 + (i % 5) * 3, 0.08, 300.0, std::nullopt});
    std::sort(topo.lines.begin(), topo.lines.end(),
              [](const Line& a, const Line& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });

    auto days = make_days(
        N, {73, 73, 73, 73, 73}, [](int d, BusId n, int h) { return 300.0 + 10.0 * d + n % 5 + h; },
        [](int, BusId, int h) { return h >= 7 && h <= 18 ? 0.6 : 0.0; }, [](int, BusId, int) { return 0.35; });

    auto regions = single_region_per_bus(topo.buses);
    std::map<RegionId, double> dc, em;
    for (int i = 0; i < 38; ++i) dc["R" + std::to_string(i * 3)] = 1.0 / 38;
    for (int i = 0; i < 10; ++i) em["R" + std::to_string(i * 11 + 1)] = 1.0 / 10;
    s.demand.dc_shares = dc;
    s.demand.em_shares = em;
    s.demand.dc_peak_gw = {0, 2.43, 6.66, 13.90, 18.00, 22.18, 24.20};
    s.demand.manufacturing_heat_gw = 18.97;
    s.demand.electrification = {0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    s.demand.base_peak_gw = {85.76, 92.22, 97.63, 107.64, 110.86, 116.77, 120.33};
    s.demand.base_energy_twh = {485.90, 538.94, 595.63, 685.31, 747.59, 808.97, 846.99};

    PlanningProblem p;
    p.demand = build_demand_cube(s.demand, days, dc, em, 485.90);
    p.scenario = std::move(s);
    p.topology = std::move(topo);
    p.days = std::move(days);
    p.regions = std::move(regions);
    return p;
}

} // namespace gridx::testing
