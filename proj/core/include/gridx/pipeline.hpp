#pragma once

// File-driven end-to-end assembly: scenario + data directory -> PlanningProblem.
//
// Files read from ScenarioConfig::data_dir:
//   buses.csv, generators.csv, lines.csv, storage.csv (optional)
//   base_load.csv, cf_solar.csv (optional), cf_wind.csv (optional)
//   county_centroids.csv (optional), bus_county.csv (optional)

#include "gridx/cluster.hpp"
#include "gridx/demand.hpp"
#include "gridx/domain.hpp"
#include "gridx/ingest.hpp"
#include "gridx/planner.hpp"
#include "gridx/solver.hpp"
#include "gridx/spatial.hpp"

#include <filesystem>

namespace gridx {

struct RegionSetup {
    RegionMap map;
    Reallocation dc;
    Reallocation em;
};

/// Centroids and the explicit bus map are taken from data_dir when present.
RegionSetup setup_regions(const ScenarioConfig& scenario, const GridTopology& topology);

/// E_t0: the configured value, else the energy of the 8760-hour base profile.
double initial_base_energy_twh(const ScenarioConfig& scenario, const ProfileSet& profiles);

struct PreparedInputs {
    GridTopology topology;
    ProfileSet profiles;
};

PreparedInputs load_inputs(const ScenarioConfig& scenario);

/// Loads inputs, clusters days, maps regions and synthesizes demand.
PlanningProblem prepare_problem(const ScenarioConfig& scenario);
PlanningProblem prepare_problem(const ScenarioConfig& scenario, const PreparedInputs& inputs);

struct SolvedPlan {
    PlanModel model;
    LpSolution solution;
};

SolvedPlan build_and_solve(const PlanningProblem& problem, const BuildOptions& options = {});

} // namespace gridx
