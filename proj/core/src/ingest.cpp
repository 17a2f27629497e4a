#include "gridx/ingest.hpp"

#include "gridx/csv.hpp"
#include "gridx/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gridx {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPerKw = 1000.0; // $/kW -> $/MW

std::string join_key(std::string_view parent, std::string_view key) {
    return parent.empty() ? std::string(key) : fmt::format("{}.{}", parent, key);
}

const json& require(const json& node, std::string_view parent, std::string_view key) {
    if (!node.is_object() || !node.contains(std::string(key))) {
        throw InputError(fmt::format("missing required key '{}'", join_key(parent, key)));
    }
    return node.at(std::string(key));
}

double as_number(const json& node, std::string_view key) {
    if (!node.is_number()) {
        throw InputError(fmt::format("key '{}' must be a number", key));
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) {
        throw InputError(fmt::format("key '{}' must be finite", key));
    }
    return v;
}

int as_int(const json& node, std::string_view key) {
    if (!node.is_number_integer()) {
        if (node.is_number() && std::floor(node.get<double>()) == node.get<double>()) {
            return static_cast<int>(node.get<double>());
        }
        throw InputError(fmt::format("key '{}' must be a whole number", key));
    }
    return node.get<int>();
}

double number_or(const json& node, std::string_view parent, std::string_view key, double fallback) {
    if (node.is_object() && node.contains(std::string(key))) {
        return as_number(node.at(std::string(key)), join_key(parent, key));
    }
    return fallback;
}

bool is_year_key(const std::string& key) {
    return key.size() == 4 && std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// Accepts {"2025": v, ...} or an array aligned with the horizon.
std::vector<double> yearly_series(const json& node, std::string_view key, const Horizon& horizon) {
    std::vector<double> out(horizon.size());
    if (node.is_array()) {
        if (node.size() != horizon.size()) {
            throw InputError(fmt::format("'{}' lists {} values but the horizon has {} years", key, node.size(),
                                         horizon.size()));
        }
        for (std::size_t t = 0; t < horizon.size(); ++t) {
            out[t] = as_number(node[t], key);
        }
        return out;
    }
    if (!node.is_object()) {
        throw InputError(fmt::format("'{}' must be an object keyed by year or an array", key));
    }
    for (std::size_t t = 0; t < horizon.size(); ++t) {
        const std::string year = std::to_string(horizon.year(t));
        if (!node.contains(year)) {
            throw InputError(fmt::format("year lists inconsistent: '{}' has no entry for {}", key, year));
        }
        out[t] = as_number(node.at(year), fmt::format("{}.{}", key, year));
    }
    return out;
}

std::map<int, double> yearly_map(const json& node, std::string_view key, const Horizon& horizon) {
    std::map<int, double> out;
    if (node.is_number()) {
        const double v = as_number(node, key);
        for (int year : horizon.years()) {
            out[year] = v;
        }
        return out;
    }
    const auto series = yearly_series(node, key, horizon);
    for (std::size_t t = 0; t < horizon.size(); ++t) {
        out[horizon.year(t)] = series[t];
    }
    return out;
}

std::map<RegionId, double> share_map(const json& node, std::string_view key) {
    if (!node.is_object()) {
        throw InputError(fmt::format("'{}' must map region ids to shares", key));
    }
    std::map<RegionId, double> out;
    for (const auto& [region, value] : node.items()) {
        out[region] = as_number(value, fmt::format("{}.{}", key, region));
    }
    return out;
}

Horizon parse_horizon(const json& node) {
    std::vector<int> years;
    if (node.is_array()) {
        for (const auto& y : node) {
            years.push_back(as_int(y, "horizon"));
        }
    } else if (node.is_object()) {
        const int first = as_int(require(node, "horizon", "start"), "horizon.start");
        const int last = as_int(require(node, "horizon", "end"), "horizon.end");
        for (int y = first; y <= last; ++y) {
            years.push_back(y);
        }
    } else {
        throw InputError("'horizon' must be a list of years or {start, end}");
    }
    if (years.empty()) {
        throw InputError("horizon must be non-empty");
    }
    return Horizon(std::move(years));
}

TechCatalogEntry parse_tech_entry(TechKind kind, const json& node, const Horizon& horizon) {
    const std::string prefix = fmt::format("tech.{}", to_string(kind));
    TechCatalogEntry entry;
    entry.kind = kind;
    entry.lead_time_years = as_int(require(node, prefix, "lead_time"), prefix + ".lead_time");
    entry.f_min = number_or(node, prefix, "f_min", 0.0);
    entry.f_max = number_or(node, prefix, "f_max", 1.0);
    entry.ramp = number_or(node, prefix, "ramp", 1.0);
    if (node.contains("earliest_build_year") && !node.at("earliest_build_year").is_null()) {
        entry.earliest_build_year = as_int(node.at("earliest_build_year"), prefix + ".earliest_build_year");
    }
    for (const auto& [key, value] : node.items()) {
        if (!is_year_key(key)) {
            continue;
        }
        const std::string ykey = prefix + "." + key;
        TechYearCosts c;
        c.capex_per_mw = as_number(require(value, ykey, "capex"), ykey + ".capex") * kPerKw;
        c.fom_per_mw_year = as_number(require(value, ykey, "fom"), ykey + ".fom") * kPerKw;
        c.vom_per_mwh = number_or(value, ykey, "vom", 0.0);
        c.fuel_per_mmbtu = number_or(value, ykey, "fuel", 0.0);
        c.heat_rate_mmbtu_per_mwh = number_or(value, ykey, "heat_rate", 0.0);
        entry.costs_by_year[std::stoi(key)] = c;
    }
    for (int year : horizon.years()) {
        if (!entry.costs_by_year.contains(year)) {
            throw InputError(fmt::format("year lists inconsistent: '{}' has no cost entry for {}", prefix, year));
        }
    }
    return entry;
}

StorageParams parse_storage(const json& node, const Horizon& horizon) {
    StorageParams st;
    st.lead_time_years = node.contains("lead_time") ? as_int(node.at("lead_time"), "storage.lead_time") : 1;
    st.duration_hours = number_or(node, "storage", "duration", 4.0);
    const double rte = number_or(node, "storage", "round_trip", kDefaultRoundTripEfficiency);
    if (!(rte > 0.0 && rte <= 1.0)) {
        throw InputError("storage.round_trip must lie in (0, 1]");
    }
    st.eta_charge = number_or(node, "storage", "eta_charge", std::sqrt(rte));
    st.eta_discharge = number_or(node, "storage", "eta_discharge", std::sqrt(rte));
    for (const auto& [key, value] : node.items()) {
        if (!is_year_key(key)) {
            continue;
        }
        const std::string ykey = "storage." + key;
        st.costs_by_year[std::stoi(key)] = {
            as_number(require(value, ykey, "capex"), ykey + ".capex") * kPerKw,
            as_number(require(value, ykey, "fom"), ykey + ".fom") * kPerKw,
        };
    }
    for (int year : horizon.years()) {
        if (!st.costs_by_year.contains(year)) {
            throw InputError(fmt::format("year lists inconsistent: 'storage' has no cost entry for {}", year));
        }
    }
    return st;
}

double optional_cap(const json& node, std::string_view key) {
    if (!node.contains(std::string(key)) || node.at(std::string(key)).is_null()) {
        return kInfinity;
    }
    return as_number(node.at(std::string(key)), fmt::format("econ.{}", key));
}

} // namespace

ScenarioConfig parse_scenario(std::string_view json_text, const fs::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(fmt::format("scenario is not valid JSON: {}", e.what()));
    }
    if (!root.is_object()) {
        throw InputError("scenario must be a JSON object");
    }

    ScenarioConfig s;
    s.horizon = parse_horizon(require(root, "", "horizon"));
    s.data_dir = base_dir;
    if (root.contains("data_dir")) {
        s.data_dir = base_dir / root.at("data_dir").get<std::string>();
    }

    const json& econ = require(root, "", "econ");
    s.econ.interest_rate = as_number(require(econ, "econ", "interest_rate"), "econ.interest_rate");
    s.econ.base_year = as_int(require(econ, "econ", "base_year"), "econ.base_year");
    s.econ.demand_curtail_cost = number_or(econ, "econ", "demand_curtail_cost", 5000.0);
    s.econ.gen_curtail_cost = number_or(econ, "econ", "gen_curtail_cost", 100.0);
    s.econ.s_base_mva = number_or(econ, "econ", "s_base", 100.0);
    s.econ.transmission_lead_time_years =
        econ.contains("trans_lead_time") ? as_int(econ.at("trans_lead_time"), "econ.trans_lead_time") : 3;
    s.econ.trans_capex_per_mw_mile = yearly_map(require(econ, "econ", "trans_capex"), "econ.trans_capex", s.horizon);
    s.econ.max_new_gen_mw = optional_cap(econ, "max_new_gen");
    s.econ.max_new_trans_mw = optional_cap(econ, "max_new_trans");
    s.econ.max_new_storage_mw = optional_cap(econ, "max_new_storage");

    s.storage = parse_storage(require(root, "", "storage"), s.horizon);

    const json& techs = require(root, "", "tech");
    if (!techs.is_object() || techs.empty()) {
        throw InputError("'tech' must list at least one technology");
    }
    for (const auto& [key, node] : techs.items()) {
        const TechKind kind = parse_tech_or_throw(key);
        s.techs.set(parse_tech_entry(kind, node, s.horizon));
    }

    const json& demand = require(root, "", "demand");
    DemandScenario& d = s.demand;
    d.base_energy_twh = yearly_series(require(demand, "demand", "E_base"), "demand.E_base", s.horizon);
    if (demand.contains("E_base_t0") && !demand.at("E_base_t0").is_null()) {
        d.base_energy_t0_twh = as_number(demand.at("E_base_t0"), "demand.E_base_t0");
    }
    d.dc_peak_gw = yearly_series(require(demand, "demand", "P_DC"), "demand.P_DC", s.horizon);
    d.dc_load_factor = number_or(demand, "demand", "LF_DC", 0.9);
    d.manufacturing_heat_gw = number_or(demand, "demand", "Q_M", 0.0);
    d.electrification = yearly_series(require(demand, "demand", "phi"), "demand.phi", s.horizon);
    d.eta_elec = number_or(demand, "demand", "eta_elec", 0.97);
    d.base_peak_gw = yearly_series(require(demand, "demand", "P_base_peak"), "demand.P_base_peak", s.horizon);
    if (demand.contains("psi_dc")) {
        d.dc_shares = share_map(demand.at("psi_dc"), "demand.psi_dc");
    } else if (fs::exists(s.data_dir / "psi_dc.csv")) {
        d.dc_shares = load_shares(s.data_dir / "psi_dc.csv");
    }
    if (demand.contains("psi_em")) {
        d.em_shares = share_map(demand.at("psi_em"), "demand.psi_em");
    } else if (fs::exists(s.data_dir / "psi_em.csv")) {
        d.em_shares = load_shares(s.data_dir / "psi_em.csv");
    }

    if (root.contains("clustering")) {
        const json& c = root.at("clustering");
        if (c.contains("k")) s.clustering.k = as_int(c.at("k"), "clustering.k");
        if (c.contains("seed")) s.clustering.seed = c.at("seed").get<std::uint64_t>();
        if (c.contains("restarts")) s.clustering.restarts = as_int(c.at("restarts"), "clustering.restarts");
        if (c.contains("max_iterations"))
            s.clustering.max_iterations = as_int(c.at("max_iterations"), "clustering.max_iterations");
        if (c.contains("profile")) {
            const auto p = c.at("profile").get<std::string>();
            if (p == "mean") s.clustering.profile = ProfileKind::Mean;
            else if (p == "medoid") s.clustering.profile = ProfileKind::Medoid;
            else throw InputError(fmt::format("clustering.profile must be 'mean' or 'medoid', got '{}'", p));
        }
    }
    if (root.contains("solver")) {
        const json& c = root.at("solver");
        if (c.contains("backend")) s.solver.backend = c.at("backend").get<std::string>();
        if (s.solver.backend != "simplex" && s.solver.backend != "external") {
            throw InputError(fmt::format("solver.backend must be 'simplex' or 'external', got '{}'", s.solver.backend));
        }
        s.solver.tolerance = number_or(c, "solver", "tolerance", 1e-7);
        if (c.contains("max_iterations") && !c.at("max_iterations").is_null())
            s.solver.max_iterations = c.at("max_iterations").get<std::int64_t>();
        if (c.contains("command")) s.solver.command = c.at("command").get<std::string>();
    }
    if (root.contains("planner")) {
        const json& c = root.at("planner");
        if (c.contains("forbid_stranded_investment"))
            s.planner.forbid_stranded_investment = c.at("forbid_stranded_investment").get<bool>();
        if (c.contains("storage_initial_state")) {
            const auto v = c.at("storage_initial_state").get<std::string>();
            if (v == "cyclic") s.planner.storage_initial_state = StorageInitialState::Cyclic;
            else if (v == "free") s.planner.storage_initial_state = StorageInitialState::Free;
            else throw InputError(fmt::format("planner.storage_initial_state must be 'cyclic' or 'free', got '{}'", v));
        }
    }

    validate_scenario(s);
    return s;
}

ScenarioConfig load_scenario(const fs::path& config_path) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open scenario '{}'", config_path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), config_path.parent_path());
}

std::string serialize_scenario(const ScenarioConfig& s) {
    json root;
    root["horizon"] = s.horizon.years();
    auto by_year = [&](const std::vector<double>& series) {
        json node = json::object();
        for (std::size_t t = 0; t < s.horizon.size(); ++t) {
            node[std::to_string(s.horizon.year(t))] = series[t];
        }
        return node;
    };
    auto cap = [](double v) { return std::isinf(v) ? json(nullptr) : json(v); };

    json econ;
    econ["interest_rate"] = s.econ.interest_rate;
    econ["base_year"] = s.econ.base_year;
    econ["demand_curtail_cost"] = s.econ.demand_curtail_cost;
    econ["gen_curtail_cost"] = s.econ.gen_curtail_cost;
    econ["s_base"] = s.econ.s_base_mva;
    econ["trans_lead_time"] = s.econ.transmission_lead_time_years;
    json trans = json::object();
    for (const auto& [year, v] : s.econ.trans_capex_per_mw_mile) {
        trans[std::to_string(year)] = v;
    }
    econ["trans_capex"] = trans;
    econ["max_new_gen"] = cap(s.econ.max_new_gen_mw);
    econ["max_new_trans"] = cap(s.econ.max_new_trans_mw);
    econ["max_new_storage"] = cap(s.econ.max_new_storage_mw);
    root["econ"] = econ;

    json storage;
    storage["lead_time"] = s.storage.lead_time_years;
    storage["duration"] = s.storage.duration_hours;
    storage["eta_charge"] = s.storage.eta_charge;
    storage["eta_discharge"] = s.storage.eta_discharge;
    for (const auto& [year, c] : s.storage.costs_by_year) {
        storage[std::to_string(year)] = {{"capex", c.capex_per_mw / kPerKw}, {"fom", c.fom_per_mw_year / kPerKw}};
    }
    root["storage"] = storage;

    json techs = json::object();
    for (TechKind kind : s.techs.kinds()) {
        const auto& e = s.techs.at(kind);
        json node;
        node["lead_time"] = e.lead_time_years;
        node["f_min"] = e.f_min;
        node["f_max"] = e.f_max;
        node["ramp"] = e.ramp;
        node["earliest_build_year"] = e.earliest_build_year ? json(*e.earliest_build_year) : json(nullptr);
        for (const auto& [year, c] : e.costs_by_year) {
            node[std::to_string(year)] = {{"capex", c.capex_per_mw / kPerKw},
                                          {"fom", c.fom_per_mw_year / kPerKw},
                                          {"vom", c.vom_per_mwh},
                                          {"fuel", c.fuel_per_mmbtu},
                                          {"heat_rate", c.heat_rate_mmbtu_per_mwh}};
        }
        techs[std::string(to_string(kind))] = node;
    }
    root["tech"] = techs;

    const DemandScenario& d = s.demand;
    json demand;
    demand["E_base"] = by_year(d.base_energy_twh);
    demand["E_base_t0"] = d.base_energy_t0_twh ? json(*d.base_energy_t0_twh) : json(nullptr);
    demand["P_DC"] = by_year(d.dc_peak_gw);
    demand["LF_DC"] = d.dc_load_factor;
    demand["Q_M"] = d.manufacturing_heat_gw;
    demand["phi"] = by_year(d.electrification);
    demand["eta_elec"] = d.eta_elec;
    demand["P_base_peak"] = by_year(d.base_peak_gw);
    demand["psi_dc"] = json(d.dc_shares);
    demand["psi_em"] = json(d.em_shares);
    root["demand"] = demand;

    root["clustering"] = {{"k", s.clustering.k},
                          {"seed", s.clustering.seed},
                          {"restarts", s.clustering.restarts},
                          {"max_iterations", s.clustering.max_iterations},
                          {"profile", s.clustering.profile == ProfileKind::Mean ? "mean" : "medoid"}};
    json solver = {{"backend", s.solver.backend}, {"tolerance", s.solver.tolerance}, {"command", s.solver.command}};
    solver["max_iterations"] = s.solver.max_iterations ? json(*s.solver.max_iterations) : json(nullptr);
    root["solver"] = solver;
    root["planner"] = {
        {"forbid_stranded_investment", s.planner.forbid_stranded_investment},
        {"storage_initial_state",
         s.planner.storage_initial_state == StorageInitialState::Cyclic ? "cyclic" : "free"}};
    return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

const std::vector<double>* ProfileMatrix::find(BusId bus) const noexcept {
    auto it = std::lower_bound(entities.begin(), entities.end(), bus);
    if (it == entities.end() || *it != bus) {
        return nullptr;
    }
    return &values[static_cast<std::size_t>(it - entities.begin())];
}

ProfileMatrix parse_profile_matrix(std::string_view csv_text, std::size_t num_buses, ProfileUnit unit,
                                   std::string_view source) {
    const csv::Table table = csv::parse(csv_text, std::string(source));
    std::size_t first_bus_col = 0;
    if (!table.header.empty() && (table.header[0] == "hour" || table.header[0] == "timestamp")) {
        first_bus_col = 1;
    }
    std::vector<std::pair<BusId, std::size_t>> columns;
    for (std::size_t c = first_bus_col; c < table.header.size(); ++c) {
        const auto id = csv::to_integer(table.header[c], fmt::format("{}: header", source));
        if (id < 0 || static_cast<std::size_t>(id) >= num_buses) {
            throw InputError(fmt::format("{}: unknown bus id {}", source, id));
        }
        columns.emplace_back(static_cast<BusId>(id), c);
    }
    std::sort(columns.begin(), columns.end());
    for (std::size_t i = 1; i < columns.size(); ++i) {
        if (columns[i].first == columns[i - 1].first) {
            throw InputError(fmt::format("{}: bus {} listed twice", source, columns[i].first));
        }
    }
    if (table.rows.size() != static_cast<std::size_t>(kHoursPerYear)) {
        throw InputError(fmt::format("{}: expected {} values, got {}", source, kHoursPerYear, table.rows.size()));
    }

    ProfileMatrix m;
    for (const auto& [bus, col] : columns) {
        std::vector<double> series(static_cast<std::size_t>(kHoursPerYear));
        for (std::size_t h = 0; h < table.rows.size(); ++h) {
            const std::string ctx = fmt::format("{}:{} bus {}", source, table.line_numbers[h], bus);
            double v = csv::to_double(table.rows[h][col], ctx);
            if (unit == ProfileUnit::CapacityFactor) {
                if (v < 0.0 || v > kCapacityFactorSlack) {
                    throw InputError(fmt::format("{}: capacity factor out of range ({})", ctx, v));
                }
                v = std::min(v, 1.0);
            } else if (v < 0.0) {
                throw InputError(fmt::format("{}: negative load ({})", ctx, v));
            }
            series[h] = v;
        }
        m.entities.push_back(bus);
        m.values.push_back(std::move(series));
    }
    return m;
}

ProfileMatrix load_profile_matrix(const fs::path& path, std::size_t num_buses, ProfileUnit unit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_profile_matrix(buffer.str(), num_buses, unit, path.string());
}

ProfileSet load_profiles(const fs::path& dir, std::size_t num_buses) {
    ProfileSet set;
    set.base_load = load_profile_matrix(dir / "base_load.csv", num_buses, ProfileUnit::Megawatts);
    if (fs::exists(dir / "cf_solar.csv")) {
        set.cf_solar = load_profile_matrix(dir / "cf_solar.csv", num_buses, ProfileUnit::CapacityFactor);
    }
    if (fs::exists(dir / "cf_wind.csv")) {
        set.cf_wind = load_profile_matrix(dir / "cf_wind.csv", num_buses, ProfileUnit::CapacityFactor);
    }
    return set;
}

GridTopology load_topology(const fs::path& dir) {
    const csv::Table buses_csv = csv::read(dir / "buses.csv");
    const auto id_col = buses_csv.require_column("id");
    const auto lat_col = buses_csv.require_column("lat");
    const auto lon_col = buses_csv.require_column("lon");
    const auto county_col = buses_csv.column("county");
    std::vector<Bus> buses;
    for (std::size_t r = 0; r < buses_csv.rows.size(); ++r) {
        const auto& row = buses_csv.rows[r];
        const std::string ctx = fmt::format("buses.csv:{}", buses_csv.line_numbers[r]);
        Bus bus;
        bus.id = static_cast<BusId>(csv::to_integer(row[id_col], ctx));
        bus.latitude = csv::to_double(row[lat_col], ctx);
        bus.longitude = csv::to_double(row[lon_col], ctx);
        if (county_col && !row[*county_col].empty()) {
            bus.county = row[*county_col];
        }
        buses.push_back(std::move(bus));
    }

    const csv::Table gens_csv = csv::read(dir / "generators.csv");
    const auto gbus = gens_csv.require_column("bus");
    const auto gtech = gens_csv.require_column("tech");
    const auto gcap = gens_csv.require_column("capacity_mw");
    std::vector<Generator> generators;
    for (std::size_t r = 0; r < gens_csv.rows.size(); ++r) {
        const auto& row = gens_csv.rows[r];
        const std::string ctx = fmt::format("generators.csv:{}", gens_csv.line_numbers[r]);
        generators.push_back({static_cast<BusId>(csv::to_integer(row[gbus], ctx)), parse_tech_or_throw(row[gtech]),
                              csv::to_double(row[gcap], ctx)});
    }

    std::vector<Line> lines;
    if (fs::exists(dir / "lines.csv")) {
        const csv::Table lines_csv = csv::read(dir / "lines.csv");
        const auto from = lines_csv.require_column("from");
        const auto to = lines_csv.require_column("to");
        const auto x = lines_csv.require_column("reactance_pu");
        const auto cap = lines_csv.require_column("capacity_mw");
        const auto len = lines_csv.column("length_mi");
        for (std::size_t r = 0; r < lines_csv.rows.size(); ++r) {
            const auto& row = lines_csv.rows[r];
            const std::string ctx = fmt::format("lines.csv:{}", lines_csv.line_numbers[r]);
            Line line{static_cast<BusId>(csv::to_integer(row[from], ctx)),
                      static_cast<BusId>(csv::to_integer(row[to], ctx)), csv::to_double(row[x], ctx),
                      csv::to_double(row[cap], ctx), std::nullopt};
            if (len && !row[*len].empty()) {
                line.length_mi = csv::to_double(row[*len], ctx);
            }
            lines.push_back(line);
        }
    }

    std::vector<double> storage;
    if (fs::exists(dir / "storage.csv")) {
        const csv::Table st = csv::read(dir / "storage.csv");
        const auto sbus = st.require_column("bus");
        const auto scap = st.require_column("capacity_mw");
        storage.assign(buses.size(), 0.0);
        for (std::size_t r = 0; r < st.rows.size(); ++r) {
            const std::string ctx = fmt::format("storage.csv:{}", st.line_numbers[r]);
            const auto bus = csv::to_integer(st.rows[r][sbus], ctx);
            if (bus < 0 || static_cast<std::size_t>(bus) >= buses.size()) {
                throw InputError(fmt::format("{}: unknown bus {}", ctx, bus));
            }
            storage[static_cast<std::size_t>(bus)] += csv::to_double(st.rows[r][scap], ctx);
        }
    }

    GridTopology topology = aggregate_raw_grid(std::move(buses), generators, lines, std::move(storage));
    const ValidationReport report = validate_topology(topology);
    if (!report.ok()) {
        std::string msg = fmt::format("invalid topology in '{}':", dir.string());
        for (const auto& v : report.violations) {
            msg += "\n  " + v;
        }
        throw InputError(msg);
    }
    return topology;
}

std::map<RegionId, double> load_shares(const fs::path& path) {
    const csv::Table t = csv::read(path);
    const auto region = t.require_column("county");
    const auto share = t.require_column("share");
    std::map<RegionId, double> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string ctx = fmt::format("{}:{}", path.filename().string(), t.line_numbers[r]);
        out[t.rows[r][region]] += csv::to_double(t.rows[r][share], ctx);
    }
    return out;
}

std::map<RegionId, LatLon> load_centroids(const fs::path& path) {
    const csv::Table t = csv::read(path);
    const auto region = t.require_column("county");
    const auto lat = t.require_column("lat");
    const auto lon = t.require_column("lon");
    std::map<RegionId, LatLon> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string ctx = fmt::format("{}:{}", path.filename().string(), t.line_numbers[r]);
        LatLon p{csv::to_double(t.rows[r][lat], ctx), csv::to_double(t.rows[r][lon], ctx)};
        if (!(std::abs(p.latitude) <= 90.0 && std::abs(p.longitude) <= 180.0)) {
            throw InputError(fmt::format("{}: coordinates out of range", ctx));
        }
        if (!out.emplace(t.rows[r][region], p).second) {
            throw InputError(fmt::format("{}: county '{}' listed twice", ctx, t.rows[r][region]));
        }
    }
    return out;
}

std::map<BusId, RegionId> load_bus_regions(const fs::path& path) {
    const csv::Table t = csv::read(path);
    const auto bus = t.require_column("bus");
    const auto region = t.require_column("county");
    std::map<BusId, RegionId> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string ctx = fmt::format("{}:{}", path.filename().string(), t.line_numbers[r]);
        out[static_cast<BusId>(csv::to_integer(t.rows[r][bus], ctx))] = t.rows[r][region];
    }
    return out;
}

} // namespace gridx
