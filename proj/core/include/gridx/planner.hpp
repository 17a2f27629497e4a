#pragma once

// Builds the multi-period capacity-expansion LP with DC power flow.
//
// Columns are laid out in blocks, one per VarKind in enum order. Inside a
// block the index is lexicographic in (entity, t, d, h), so a column id is a
// closed-form function of its coordinates. Entities are:
//   generator index   for c_gen, C_gen, p_gen, p_curt_gen
//   line index        for c_trans, C_trans, p_trans
//   bus id            for c_stor, C_stor, p_curt_dem, p_charge, p_disch, e_stor, theta, e_stor_init
//   index into dc_buses / em_buses for p_DC / p_EOR
//
// Counts for N buses, G generators (G_th thermal, G_rn renewable), L lines,
// B_dc + B_em buses in active large-load regions, R_dc + R_em active regions,
// and T years, D days, H hours (S = T*D*H):
//   columns = T*(2G + 2L + 2N) + S*(2G + 5N + L + B_dc + B_em)   [+ N*T in Free storage mode]
//   rows    = T*(G + L + N + 1)
//           + S*(2N + L + R_dc + R_em + 2G_th + G_rn + G + 2L + 3N)
//           + 2*G_th*T*(D*H - 1)                                  [+ N*T in Free storage mode]

#include "gridx/cluster.hpp"
#include "gridx/demand.hpp"
#include "gridx/domain.hpp"
#include "gridx/lp_model.hpp"
#include "gridx/spatial.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gridx {

enum class VarKind : std::uint8_t {
    NewGen,      // c_gen
    NewTrans,    // c_trans
    NewStor,     // c_stor
    CapGen,      // C_gen
    CapTrans,    // C_trans
    CapStor,     // C_stor
    Gen,         // p_gen
    CurtGen,     // p_curt_gen
    CurtDem,     // p_curt_dem
    Flow,        // p_trans
    Charge,      // p_charge
    Discharge,   // p_disch
    Energy,      // e_stor
    DcLoad,      // p_DC
    EmLoad,      // p_EOR
    Angle,       // theta
    EnergyInit,  // e_stor_init (Free storage mode only)
};
inline constexpr std::size_t kNumVarKinds = 17;

std::string_view to_string(VarKind kind) noexcept;
constexpr bool is_hourly(VarKind kind) noexcept {
    return kind >= VarKind::Gen && kind <= VarKind::Angle;
}

enum class RowFamily : std::uint8_t {
    GenCapacityLink,
    TransCapacityLink,
    StorCapacityLink,
    PeakAdequacy,
    PowerBalance,
    LineFlow,
    DcRegionLoad,
    EmRegionLoad,
    ThermalMin,
    ThermalMax,
    RenewableOutput,
    GenCurtailLimit,
    RampUp,
    RampDown,
    RampDayUp,
    RampDayDown,
    TransLimitLower,
    TransLimitUpper,
    StorageBalance,
    StorageDayLink,
    StorageCycle,
    StorageEnergyCap,
    ChargeCap,
    DischargeCap,
};
inline constexpr std::size_t kNumRowFamilies = 24;

std::string_view to_string(RowFamily family) noexcept;

struct VarRef {
    VarKind kind = VarKind::NewGen;
    std::size_t entity = 0;
    std::size_t t = 0;
    int d = -1; // -1 for yearly variables
    int h = -1;
};

struct VarBlock {
    std::int32_t base = 0;
    std::size_t entities = 0;
};

class VarRegistry {
public:
    VarRegistry() = default;
    VarRegistry(std::array<std::size_t, kNumVarKinds> entities, std::size_t years, std::size_t days,
                std::size_t hours);

    std::int32_t col(VarKind kind, std::size_t entity, std::size_t t) const;
    std::int32_t col(VarKind kind, std::size_t entity, std::size_t t, int d, int h) const;
    VarRef locate(std::int32_t col) const;

    const VarBlock& block(VarKind kind) const { return blocks_[static_cast<std::size_t>(kind)]; }
    std::size_t count(VarKind kind) const;
    std::size_t size() const noexcept { return total_; }
    std::size_t years() const noexcept { return years_; }
    std::size_t days() const noexcept { return days_; }
    std::size_t hours() const noexcept { return hours_; }

private:
    std::array<VarBlock, kNumVarKinds> blocks_{};
    std::size_t years_ = 0, days_ = 0, hours_ = 0, total_ = 0;
};

/// Provenance of one row. `entity` follows the family: generator index,
/// line index, bus id or region index; -1 where not applicable.
struct RowTag {
    RowFamily family = RowFamily::PowerBalance;
    std::int32_t entity = -1;
    std::int16_t t = -1;
    std::int16_t d = -1;
    std::int16_t h = -1;
};

struct PlanModelStats {
    std::size_t n_vars = 0;
    std::size_t n_constraints = 0;
    std::size_t n_nonzeros = 0;
    std::map<std::string, std::size_t> vars_by_kind;
    std::map<std::string, std::size_t> rows_by_family;
};

/// Everything the builder needs; each part can be produced by the pipeline
/// or written by hand in tests.
struct PlanningProblem {
    ScenarioConfig scenario;
    GridTopology topology;
    RepresentativeDays days;
    RegionMap regions;
    DemandCube demand;
};

struct BuildOptions {
    bool with_names = true;
    bool with_row_tags = true;
};

struct PlanModel {
    LpModel lp;
    VarRegistry vars;
    std::vector<RowTag> row_tags;
    PlanModelStats stats;
    std::vector<BusId> dc_buses;          // entities of p_DC
    std::vector<BusId> em_buses;          // entities of p_EOR
    std::vector<double> line_length_mi;   // per line
    std::vector<double> discount;         // per year
    BusId reference_bus = 0;
};

/// Throws InputError for inconsistent inputs (empty horizon, missing cost
/// entries, renewable generator without a profile, unknown region).
PlanModel build_model(const PlanningProblem& problem, const BuildOptions& options = {});

PlanModelStats compute_stats(const LpModel& lp, const VarRegistry& vars, const std::vector<RowTag>& tags);

/// One JSON object per line: row index, name, family and coordinates.
void write_row_provenance(const PlanModel& model, const PlanningProblem& problem, std::ostream& out);
void write_row_provenance(const PlanModel& model, const PlanningProblem& problem, const std::filesystem::path& path);

} // namespace gridx
