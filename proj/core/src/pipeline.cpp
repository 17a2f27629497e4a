#include "gridx/pipeline.hpp"

#include "gridx/error.hpp"

namespace gridx {

namespace fs = std::filesystem;

RegionSetup setup_regions(const ScenarioConfig& scenario, const GridTopology& topology) {
    const auto centroid_file = scenario.data_dir / "county_centroids.csv";
    const auto bus_map_file = scenario.data_dir / "bus_county.csv";
    const auto centroids = fs::exists(centroid_file) ? load_centroids(centroid_file) : std::map<RegionId, LatLon>{};
    const auto explicit_map = fs::exists(bus_map_file) ? load_bus_regions(bus_map_file) : std::map<BusId, RegionId>{};
    RegionSetup out;
    out.map = assign_buses(topology.buses, centroids, explicit_map);
    out.dc = reallocate_empty_regions(scenario.demand.dc_shares, out.map);
    out.em = reallocate_empty_regions(scenario.demand.em_shares, out.map);
    return out;
}

double initial_base_energy_twh(const ScenarioConfig& scenario, const ProfileSet& profiles) {
    if (scenario.demand.base_energy_t0_twh) return *scenario.demand.base_energy_t0_twh;
    return profile_energy_twh(profiles.base_load);
}

PreparedInputs load_inputs(const ScenarioConfig& scenario) {
    PreparedInputs in;
    in.topology = load_topology(scenario.data_dir);
    in.profiles = load_profiles(scenario.data_dir, in.topology.num_buses());
    return in;
}

PlanningProblem prepare_problem(const ScenarioConfig& scenario) { return prepare_problem(scenario, load_inputs(scenario)); }

PlanningProblem prepare_problem(const ScenarioConfig& scenario, const PreparedInputs& inputs) {
    PlanningProblem p;
    p.scenario = scenario;
    p.topology = inputs.topology;
    const auto n = p.topology.num_buses();
    p.days = cluster_days(inputs.profiles, n, scenario.clustering);
    auto regions = setup_regions(scenario, p.topology);
    p.regions = std::move(regions.map);
    p.demand = build_demand_cube(scenario.demand, p.days, regions.dc.shares, regions.em.shares,
                                 initial_base_energy_twh(scenario, inputs.profiles));
    return p;
}

SolvedPlan build_and_solve(const PlanningProblem& problem, const BuildOptions& options) {
    SolvedPlan out;
    out.model = build_model(problem, options);
    out.solution = solve_lp(out.model.lp, problem.scenario.solver);
    return out;
}

} // namespace gridx
