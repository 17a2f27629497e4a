#pragma once

// Result extraction and reporting: capacity tables, costs, curtailment,
// realized capacity factors and construction-time sweeps.

#include "gridx/domain.hpp"
#include "gridx/lp_model.hpp"
#include "gridx/planner.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gridx {

inline constexpr std::size_t kNumTechs = kAllTechs.size();

struct GenCapacity {
    BusId bus = 0;
    TechKind tech = TechKind::NaturalGas;
    std::vector<double> available_mw; // C per t
    std::vector<double> new_mw;       // c per t
};

struct LineCapacity {
    BusId from = 0;
    BusId to = 0;
    std::vector<double> available_mw;
    std::vector<double> new_mw;
};

struct StorageCapacity {
    BusId bus = 0;
    std::vector<double> available_mw;
    std::vector<double> new_mw;
};

/// Discounted and undiscounted cost components of one year, in USD.
struct YearCosts {
    double gen_capex = 0.0;
    double trans_capex = 0.0;
    double stor_capex = 0.0;
    double fixed_om = 0.0;
    double variable = 0.0;       // thermal fuel + VOM
    double gen_curtailment = 0.0;
    double dem_curtailment = 0.0;
    double discount = 1.0;

    double capex() const noexcept { return gen_capex + trans_capex + stor_capex; }
    double opex() const noexcept { return fixed_om + variable + gen_curtailment + dem_curtailment; }
    double total() const noexcept { return capex() + opex(); }
};

struct YearEnergy {
    double generation_mwh = 0.0;
    double gen_curtailed_mwh = 0.0;
    double charge_mwh = 0.0;
    double discharge_mwh = 0.0;
    double demand_mwh = 0.0;          // base + DC + EM
    double dem_curtailed_mwh = 0.0;

    double supply_mwh() const noexcept { return generation_mwh - gen_curtailed_mwh + discharge_mwh - charge_mwh; }
    double served_mwh() const noexcept { return demand_mwh - dem_curtailed_mwh; }
};

struct PlanSolution {
    std::string status;
    double objective = 0.0;
    std::int64_t iterations = 0;
    std::vector<int> years;
    std::array<std::vector<double>, kNumTechs> capacity_by_tech; // MW per t; empty when tech absent
    std::array<std::vector<double>, kNumTechs> new_by_tech;      // MW per t
    std::vector<double> transmission_mw;
    std::vector<double> new_transmission_mw;
    std::vector<double> storage_mw;
    std::vector<double> new_storage_mw;
    std::vector<GenCapacity> generators;
    std::vector<LineCapacity> lines;
    std::vector<StorageCapacity> storage;
    std::vector<YearCosts> costs;      // discounted
    std::vector<YearEnergy> energy;
    /// Weighted annual energy / (8760 * available capacity); nullopt when C = 0.
    std::array<std::vector<std::optional<double>>, kNumTechs> realized_cf;
};

/// Throws SolverError when the solution is not optimal.
PlanSolution extract_solution(const PlanModel& model, const PlanningProblem& problem, const LpSolution& solution);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string to_csv() const;
};

/// Eight rows (six technologies, Transmission, Storage) by year, GW with two decimals.
Table capacity_table(const PlanSolution& solution);
/// Per year CAPEX, OPEX and total, discounted and undiscounted, plus the grand total.
Table cost_table(const PlanSolution& solution);
/// Per year curtailed MWh and share of demand in percent.
Table curtailment_table(const PlanSolution& solution);
/// Realized capacity factor per technology and year.
Table capacity_factor_table(const PlanSolution& solution);

double total_discounted_cost(const PlanSolution& solution);

struct CurtailmentYear {
    int year = 0;
    double curtailed_mwh = 0.0;
    double demand_mwh = 0.0;
    double percent = 0.0;
};
std::vector<CurtailmentYear> curtailment_report(const PlanSolution& solution);

/// |supply - served| / max(1, served) per year.
std::vector<double> energy_balance_residual(const PlanSolution& solution);

/// Writes capacity.csv, costs.csv, curtailment.csv, capacity_factors.csv.
void write_reports(const PlanSolution& solution, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Construction-time sweep

struct SweepRow {
    int omega = 0;
    std::string status;
    std::string message;
    double objective = 0.0;
    std::array<double, kNumTechs> new_gen_gw{};
    double new_transmission_gw = 0.0;
    double new_storage_gw = 0.0;
};

struct SweepOptions {
    unsigned parallelism = 1;
    BuildOptions build{false, false};
};

/// One independent build and solve per omega, in the given order. Failures
/// are recorded in the row and the sweep continues.
std::vector<SweepRow> sweep_construction_time(const PlanningProblem& problem, TechKind tech,
                                              const std::vector<int>& omegas, const SweepOptions& options = {});
Table sweep_table(const std::vector<SweepRow>& rows);

} // namespace gridx
