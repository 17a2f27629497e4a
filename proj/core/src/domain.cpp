#include "gridx/domain.hpp"

#include "gridx/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace gridx {

namespace {

struct TechNames {
    TechKind kind;
    std::string_view key;
    std::string_view display;
    std::string_view code;
};

constexpr std::array<TechNames, 6> kTechNames = {{
    {TechKind::Nuclear, "nuclear", "Nuclear", "nuc"},
    {TechKind::Coal, "coal", "Coal", "coal"},
    {TechKind::NaturalGas, "natural_gas", "Natural gas", "ng"},
    {TechKind::Solar, "solar", "Solar", "pv"},
    {TechKind::Wind, "wind", "Wind", "wind"},
    {TechKind::Hydro, "hydro", "Hydro", "hydro"},
}};

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

std::string_view to_string(TechKind kind) noexcept { return kTechNames[tech_index(kind)].key; }
std::string_view display_name(TechKind kind) noexcept { return kTechNames[tech_index(kind)].display; }
std::string_view short_code(TechKind kind) noexcept { return kTechNames[tech_index(kind)].code; }

std::optional<TechKind> parse_tech(std::string_view text) {
    const std::string key = lower(text);
    for (const auto& names : kTechNames) {
        if (key == names.key || key == lower(names.display) || key == names.code) {
            return names.kind;
        }
    }
    if (key == "naturalgas" || key == "gas") {
        return TechKind::NaturalGas;
    }
    return std::nullopt;
}

TechKind parse_tech_or_throw(std::string_view text) {
    if (auto kind = parse_tech(text)) {
        return *kind;
    }
    throw InputError(fmt::format("unknown technology '{}'", text));
}

// ---------------------------------------------------------------------------

ValidationReport validate_topology(const GridTopology& topology) {
    ValidationReport report;
    auto& out = report.violations;
    const auto n = static_cast<BusId>(topology.buses.size());

    for (std::size_t i = 0; i < topology.buses.size(); ++i) {
        const Bus& bus = topology.buses[i];
        if (bus.id != static_cast<BusId>(i)) {
            out.push_back(fmt::format("bus ids must be dense and sorted: position {} holds id {}", i, bus.id));
        }
        if (!(std::abs(bus.latitude) <= 90.0) || !(std::abs(bus.longitude) <= 180.0)) {
            out.push_back(fmt::format("bus {}: coordinates ({}, {}) out of range", bus.id, bus.latitude, bus.longitude));
        }
    }
    auto known = [n](BusId id) { return id >= 0 && id < n; };

    std::set<std::pair<BusId, TechKind>> seen_generators;
    for (const Generator& gen : topology.generators) {
        if (!known(gen.bus)) {
            out.push_back(fmt::format("generator {}@{}: unknown bus {}", to_string(gen.tech), gen.bus, gen.bus));
            continue;
        }
        if (!seen_generators.emplace(gen.bus, gen.tech).second) {
            out.push_back(fmt::format("duplicate (bus,tech) generator ({}, {})", gen.bus, to_string(gen.tech)));
        }
        if (!(gen.initial_capacity_mw >= 0.0)) {
            out.push_back(fmt::format("generator ({}, {}): negative capacity", gen.bus, to_string(gen.tech)));
        }
    }

    std::set<std::pair<BusId, BusId>> seen_lines;
    std::vector<std::vector<BusId>> adjacency(static_cast<std::size_t>(std::max(n, 0)));
    for (const Line& line : topology.lines) {
        if (!known(line.from) || !known(line.to)) {
            out.push_back(fmt::format("line {}-{}: unknown bus {}", line.from, line.to,
                                      known(line.from) ? line.to : line.from));
            continue;
        }
        if (line.from == line.to) {
            out.push_back(fmt::format("line {}-{}: self loop", line.from, line.to));
            continue;
        }
        if (line.from > line.to) {
            out.push_back(fmt::format("line {}-{}: endpoints must satisfy from < to", line.from, line.to));
        }
        const auto key = std::minmax(line.from, line.to);
        if (!seen_lines.emplace(key.first, key.second).second) {
            out.push_back(fmt::format("duplicate line {}-{}", key.first, key.second));
        }
        if (!(line.reactance_pu > 0.0)) {
            out.push_back(fmt::format("line {}-{}: nonpositive reactance {}", line.from, line.to, line.reactance_pu));
        }
        if (!(line.initial_capacity_mw >= 0.0)) {
            out.push_back(fmt::format("line {}-{}: negative capacity", line.from, line.to));
        }
        if (line.length_mi && !(*line.length_mi > 0.0)) {
            out.push_back(fmt::format("line {}-{}: length must be positive", line.from, line.to));
        }
        adjacency[static_cast<std::size_t>(line.from)].push_back(line.to);
        adjacency[static_cast<std::size_t>(line.to)].push_back(line.from);
    }

    if (!topology.initial_storage_mw.empty() && topology.initial_storage_mw.size() != topology.buses.size()) {
        out.push_back("initial storage must list one value per bus");
    }
    for (double mw : topology.initial_storage_mw) {
        if (!(mw >= 0.0)) {
            out.push_back("initial storage must be nonnegative");
            break;
        }
    }

    if (n > 1) {
        std::vector<bool> reached(static_cast<std::size_t>(n), false);
        std::queue<BusId> frontier;
        frontier.push(0);
        reached[0] = true;
        while (!frontier.empty()) {
            const BusId at = frontier.front();
            frontier.pop();
            for (BusId next : adjacency[static_cast<std::size_t>(at)]) {
                if (!reached[static_cast<std::size_t>(next)]) {
                    reached[static_cast<std::size_t>(next)] = true;
                    frontier.push(next);
                }
            }
        }
        for (BusId id = 0; id < n; ++id) {
            if (!reached[static_cast<std::size_t>(id)]) {
                out.push_back(fmt::format("bus {} is disconnected from bus 0", id));
            }
        }
    }
    return report;
}

GridTopology aggregate_raw_grid(std::vector<Bus> buses,
                                std::span<const Generator> raw_generators,
                                std::span<const Line> raw_lines,
                                std::vector<double> initial_storage_mw) {
    GridTopology topology;
    topology.buses = std::move(buses);
    std::sort(topology.buses.begin(), topology.buses.end(),
              [](const Bus& a, const Bus& b) { return a.id < b.id; });
    topology.initial_storage_mw = std::move(initial_storage_mw);

    std::map<std::pair<BusId, TechKind>, double> generator_mw;
    for (const Generator& gen : raw_generators) {
        generator_mw[{gen.bus, gen.tech}] += gen.initial_capacity_mw;
    }
    topology.generators.reserve(generator_mw.size());
    for (const auto& [key, mw] : generator_mw) {
        topology.generators.push_back({key.first, key.second, mw});
    }

    struct Corridor {
        double capacity = 0.0;
        double susceptance = 0.0; // sum of 1/X
        int positive = 0;
        int negative = 0;
        double length_weighted = 0.0;
        double length_plain = 0.0;
        int length_count = 0;
        int count = 0;
        std::optional<double> single_length;
    };
    std::map<std::pair<BusId, BusId>, Corridor> corridors;
    for (const Line& line : raw_lines) {
        if (line.from == line.to) {
            throw InputError(fmt::format("line {}-{}: self loop", line.from, line.to));
        }
        if (line.reactance_pu == 0.0) {
            throw InputError(fmt::format("line {}-{}: zero reactance", line.from, line.to));
        }
        auto& c = corridors[std::minmax(line.from, line.to)];
        c.capacity += line.initial_capacity_mw;
        c.susceptance += 1.0 / line.reactance_pu;
        (line.reactance_pu > 0.0 ? c.positive : c.negative) += 1;
        if (line.length_mi) {
            c.length_weighted += *line.length_mi * line.initial_capacity_mw;
            c.length_plain += *line.length_mi;
            ++c.length_count;
            c.single_length = line.length_mi;
        }
        ++c.count;
    }
    topology.lines.reserve(corridors.size());
    for (const auto& [key, c] : corridors) {
        if (c.positive > 0 && c.negative > 0) {
            throw InputError(fmt::format("lines {}-{}: mixed reactance signs on merged corridor", key.first, key.second));
        }
        Line merged{key.first, key.second, 1.0 / c.susceptance, c.capacity, std::nullopt};
        if (c.count == 1) {
            merged.length_mi = c.single_length;
        } else if (c.length_count > 0) {
            // Capacity-weighted mean length of the members that report one.
            double weight = 0.0;
            for (const Line& line : raw_lines) {
                if (std::pair<BusId, BusId>(std::minmax(line.from, line.to)) == key && line.length_mi) {
                    weight += line.initial_capacity_mw;
                }
            }
            merged.length_mi = weight > 0.0 ? c.length_weighted / weight : c.length_plain / c.length_count;
        }
        topology.lines.push_back(merged);
    }
    return topology;
}

// ---------------------------------------------------------------------------

Horizon::Horizon(std::vector<int> years) : years_(std::move(years)) {
    for (std::size_t i = 1; i < years_.size(); ++i) {
        if (years_[i] != years_[i - 1] + 1) {
            throw InputError(fmt::format("horizon years must be consecutive: {} follows {}", years_[i], years_[i - 1]));
        }
    }
}

std::optional<std::size_t> Horizon::index_of(int year) const noexcept {
    if (years_.empty() || year < years_.front() || year > years_.back()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(year - years_.front());
}

const TechYearCosts& TechCatalogEntry::costs(int year) const {
    auto it = costs_by_year.find(year);
    if (it == costs_by_year.end()) {
        throw InputError(fmt::format("missing cost entry for {} in {}", to_string(kind), year));
    }
    return it->second;
}

void TechCatalog::set(TechCatalogEntry entry) { entries_[tech_index(entry.kind)] = std::move(entry); }

const TechCatalogEntry& TechCatalog::at(TechKind kind) const {
    const auto& entry = entries_[tech_index(kind)];
    if (!entry) {
        throw InputError(fmt::format("technology '{}' missing from catalog", to_string(kind)));
    }
    return *entry;
}

TechCatalogEntry& TechCatalog::at(TechKind kind) {
    auto& entry = entries_[tech_index(kind)];
    if (!entry) {
        throw InputError(fmt::format("technology '{}' missing from catalog", to_string(kind)));
    }
    return *entry;
}

std::vector<TechKind> TechCatalog::kinds() const {
    std::vector<TechKind> out;
    for (TechKind kind : kAllTechs) {
        if (contains(kind)) {
            out.push_back(kind);
        }
    }
    return out;
}

const StorageYearCosts& StorageParams::costs(int year) const {
    auto it = costs_by_year.find(year);
    if (it == costs_by_year.end()) {
        throw InputError(fmt::format("missing storage cost entry for {}", year));
    }
    return it->second;
}

double EconParams::trans_capex(int year) const {
    auto it = trans_capex_per_mw_mile.find(year);
    if (it == trans_capex_per_mw_mile.end()) {
        throw InputError(fmt::format("missing transmission capex for {}", year));
    }
    return it->second;
}

double EconParams::discount_factor(int year) const noexcept {
    return std::pow(1.0 + interest_rate, -static_cast<double>(year - base_year));
}

void validate_shares(const std::map<RegionId, double>& shares, std::string_view what) {
    double total = 0.0;
    for (const auto& [region, share] : shares) {
        if (!(share >= 0.0) || !std::isfinite(share)) {
            throw InputError(fmt::format("{} share for region '{}' must be a finite nonnegative number", what, region));
        }
        total += share;
    }
    if (!shares.empty() && std::abs(total - 1.0) > 1e-9) {
        throw InputError(fmt::format("{} region weights sum {:.6g}", what, total));
    }
}

void validate_scenario(const ScenarioConfig& s) {
    if (s.horizon.empty()) {
        throw InputError("horizon must be non-empty");
    }
    const std::size_t T = s.horizon.size();
    auto check_series = [T](const std::vector<double>& series, std::string_view name) {
        if (series.size() != T) {
            throw InputError(fmt::format("demand.{} has {} values but the horizon has {} years", name, series.size(), T));
        }
        for (double v : series) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw InputError(fmt::format("demand.{} values must be finite and nonnegative", name));
            }
        }
    };
    const DemandScenario& d = s.demand;
    check_series(d.base_energy_twh, "E_base");
    check_series(d.dc_peak_gw, "P_DC");
    check_series(d.electrification, "phi");
    check_series(d.base_peak_gw, "P_base_peak");
    for (std::size_t t = 1; t < T; ++t) {
        if (d.electrification[t] < d.electrification[t - 1]) {
            throw InputError("demand.phi must be non-decreasing over the horizon");
        }
    }
    for (double phi : d.electrification) {
        if (phi > 1.0) {
            throw InputError("demand.phi values must lie in [0, 1]");
        }
    }
    if (!(d.dc_load_factor > 0.0 && d.dc_load_factor <= 1.0)) {
        throw InputError(fmt::format("demand.LF_DC must lie in (0, 1], got {}", d.dc_load_factor));
    }
    if (!(d.eta_elec > 0.0 && d.eta_elec <= 1.0)) {
        throw InputError(fmt::format("demand.eta_elec must lie in (0, 1], got {}", d.eta_elec));
    }
    if (!(d.manufacturing_heat_gw >= 0.0)) {
        throw InputError("demand.Q_M must be nonnegative");
    }
    validate_shares(d.dc_shares, "data-center");
    validate_shares(d.em_shares, "manufacturing");

    for (TechKind kind : s.techs.kinds()) {
        const auto& entry = s.techs.at(kind);
        if (entry.lead_time_years < 0) {
            throw InputError(fmt::format("tech.{}.lead_time must be >= 0", to_string(kind)));
        }
        if (is_thermal(kind)) {
            if (!(entry.f_min >= 0.0 && entry.f_max <= 1.0 && entry.f_min <= entry.f_max)) {
                throw InputError(fmt::format("tech.{}: need 0 <= f_min <= f_max <= 1", to_string(kind)));
            }
            if (!(entry.ramp >= 0.0 && entry.ramp <= 1.0)) {
                throw InputError(fmt::format("tech.{}.ramp must lie in [0, 1]", to_string(kind)));
            }
        }
        for (int year : s.horizon.years()) {
            const auto& c = entry.costs(year);
            if (c.capex_per_mw < 0 || c.fom_per_mw_year < 0 || c.vom_per_mwh < 0 || c.fuel_per_mmbtu < 0 ||
                c.heat_rate_mmbtu_per_mwh < 0) {
                throw InputError(fmt::format("tech.{}.{}: costs must be nonnegative", to_string(kind), year));
            }
        }
    }
    const StorageParams& st = s.storage;
    if (!(st.eta_charge > 0.0 && st.eta_charge <= 1.0 && st.eta_discharge > 0.0 && st.eta_discharge <= 1.0)) {
        throw InputError("storage efficiencies must lie in (0, 1]");
    }
    if (!(st.duration_hours > 0.0) || st.lead_time_years < 0) {
        throw InputError("storage duration must be positive and lead time nonnegative");
    }
    for (int year : s.horizon.years()) {
        (void)st.costs(year);
        (void)s.econ.trans_capex(year);
    }
    if (s.econ.transmission_lead_time_years < 0) {
        throw InputError("econ.trans_lead_time must be >= 0");
    }
    if (!(s.econ.s_base_mva > 0.0)) {
        throw InputError("econ.s_base must be positive");
    }
    if (s.clustering.k < 1 || s.clustering.k > kDaysPerYear) {
        throw InputError(fmt::format("clustering.k must lie in [1, {}]", kDaysPerYear));
    }
    if (s.clustering.restarts < 1) {
        throw InputError("clustering.restarts must be >= 1");
    }
}

// ---------------------------------------------------------------------------

namespace {

constexpr ParameterBinding kParameters[] = {
    {"c_gen_0", "Generator", "initial_capacity_mw", "MW"},
    {"c_trans_0", "Line", "initial_capacity_mw", "MW"},
    {"c_stor_0", "GridTopology", "initial_storage_mw", "MW"},
    {"X", "Line", "reactance_pu", "p.u."},
    {"L", "Line", "length_mi", "mi"},
    {"alpha_gen", "TechYearCosts", "capex_per_mw", "$/MW"},
    {"beta_gen", "TechYearCosts", "fom_per_mw_year", "$/MW-yr"},
    {"gamma_gen", "TechYearCosts", "vom_per_mwh", "$/MWh"},
    {"gamma_fuel", "TechYearCosts", "fuel_per_mmbtu", "$/MMBtu"},
    {"HR", "TechYearCosts", "heat_rate_mmbtu_per_mwh", "MMBtu/MWh"},
    {"omega_gen", "TechCatalogEntry", "lead_time_years", "yr"},
    {"F_min", "TechCatalogEntry", "f_min", "-"},
    {"F_max", "TechCatalogEntry", "f_max", "-"},
    {"R_ramp", "TechCatalogEntry", "ramp", "1/h"},
    {"alpha_stor", "StorageYearCosts", "capex_per_mw", "$/MW"},
    {"beta_stor", "StorageYearCosts", "fom_per_mw_year", "$/MW-yr"},
    {"omega_stor", "StorageParams", "lead_time_years", "yr"},
    {"H_stor", "StorageParams", "duration_hours", "h"},
    {"eta_charge", "StorageParams", "eta_charge", "-"},
    {"eta_disch", "StorageParams", "eta_discharge", "-"},
    {"Ir", "EconParams", "interest_rate", "1/yr"},
    {"t_base", "EconParams", "base_year", "yr"},
    {"delta", "EconParams", "demand_curtail_cost", "$/MWh"},
    {"zeta", "EconParams", "gen_curtail_cost", "$/MWh"},
    {"S_base", "EconParams", "s_base_mva", "MVA"},
    {"omega_trans", "EconParams", "transmission_lead_time_years", "yr"},
    {"alpha_trans", "EconParams", "trans_capex_per_mw_mile", "$/MW-mi"},
    {"c_gen_max", "EconParams", "max_new_gen_mw", "MW"},
    {"c_trans_max", "EconParams", "max_new_trans_mw", "MW"},
    {"c_stor_max", "EconParams", "max_new_storage_mw", "MW"},
    {"E_base_t", "DemandScenario", "base_energy_twh", "TWh"},
    {"E_base_t0", "DemandScenario", "base_energy_t0_twh", "TWh"},
    {"P_DC_t", "DemandScenario", "dc_peak_gw", "GW"},
    {"LF_DC", "DemandScenario", "dc_load_factor", "-"},
    {"psi_c", "DemandScenario", "dc_shares", "-"},
    {"Q_M", "DemandScenario", "manufacturing_heat_gw", "GW"},
    {"phi_t", "DemandScenario", "electrification", "-"},
    {"eta_elec", "DemandScenario", "eta_elec", "-"},
    {"psi_e", "DemandScenario", "em_shares", "-"},
    {"P_base_peak_t", "DemandScenario", "base_peak_gw", "GW"},
    {"D_base_0", "RepresentativeDays", "base_load", "MW"},
    {"F_RN", "RepresentativeDays", "cf_solar, cf_wind", "-"},
    {"w_d", "RepresentativeDays", "weight", "days"},
    {"D_base", "DemandCube", "base", "MW"},
    {"D_DC", "DemandCube", "dc", "MW"},
    {"D_EM", "DemandCube", "em", "MW"},
    {"P_peak", "DemandCube", "peak", "MW"},
    {"C", "DemandCube", "dc_regions", "-"},
    {"E", "DemandCube", "em_regions", "-"},
};

} // namespace

std::span<const ParameterBinding> parameter_table() noexcept { return kParameters; }

} // namespace gridx
