#include "gridx/serialize.hpp"

#include "gridx/error.hpp"

#include <nlohmann/json.hpp>

namespace gridx {

using Json = nlohmann::ordered_json;

std::string stats_to_json(const PlanModelStats& stats) {
    Json j;
    j["n_vars"] = stats.n_vars;
    j["n_constraints"] = stats.n_constraints;
    j["n_nonzeros"] = stats.n_nonzeros;
    j["vars_by_kind"] = stats.vars_by_kind;
    j["rows_by_family"] = stats.rows_by_family;
    return j.dump(2) + "\n";
}

namespace {

Json opt_series(const std::vector<std::optional<double>>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x ? Json(*x) : Json(nullptr));
    return a;
}

std::vector<double> series(const Json& j) { return j.get<std::vector<double>>(); }

} // namespace

std::string solution_to_json(const PlanSolution& s) {
    Json j;
    j["status"] = s.status;
    j["objective"] = s.objective;
    j["iterations"] = s.iterations;
    j["years"] = s.years;

    Json techs = Json::object();
    for (TechKind tech : kAllTechs) {
        const auto k = tech_index(tech);
        if (s.capacity_by_tech[k].empty()) continue;
        techs[std::string(to_string(tech))] = {{"capacity_mw", s.capacity_by_tech[k]},
                                               {"new_mw", s.new_by_tech[k]},
                                               {"realized_cf", opt_series(s.realized_cf[k])}};
    }
    j["technologies"] = techs;
    j["transmission"] = {{"capacity_mw", s.transmission_mw}, {"new_mw", s.new_transmission_mw}};
    j["storage"] = {{"capacity_mw", s.storage_mw}, {"new_mw", s.new_storage_mw}};

    Json gens = Json::array();
    for (const auto& g : s.generators) {
        gens.push_back({{"bus", g.bus}, {"tech", to_string(g.tech)}, {"capacity_mw", g.available_mw}, {"new_mw", g.new_mw}});
    }
    j["generators"] = gens;
    Json lines = Json::array();
    for (const auto& l : s.lines) {
        lines.push_back({{"from", l.from}, {"to", l.to}, {"capacity_mw", l.available_mw}, {"new_mw", l.new_mw}});
    }
    j["lines"] = lines;
    Json stor = Json::array();
    for (const auto& st : s.storage) {
        stor.push_back({{"bus", st.bus}, {"capacity_mw", st.available_mw}, {"new_mw", st.new_mw}});
    }
    j["storage_units"] = stor;

    Json costs = Json::array();
    for (const auto& c : s.costs) {
        costs.push_back({{"discount", c.discount},
                         {"gen_capex", c.gen_capex},
                         {"trans_capex", c.trans_capex},
                         {"stor_capex", c.stor_capex},
                         {"fixed_om", c.fixed_om},
                         {"variable", c.variable},
                         {"gen_curtailment", c.gen_curtailment},
                         {"dem_curtailment", c.dem_curtailment}});
    }
    j["costs"] = costs;
    Json energy = Json::array();
    for (const auto& e : s.energy) {
        energy.push_back({{"generation_mwh", e.generation_mwh},
                          {"gen_curtailed_mwh", e.gen_curtailed_mwh},
                          {"charge_mwh", e.charge_mwh},
                          {"discharge_mwh", e.discharge_mwh},
                          {"demand_mwh", e.demand_mwh},
                          {"dem_curtailed_mwh", e.dem_curtailed_mwh}});
    }
    j["energy"] = energy;
    return j.dump(2) + "\n";
}

PlanSolution solution_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("solution JSON: ") + e.what());
    }
    try {
        PlanSolution s;
        s.status = j.at("status").get<std::string>();
        s.objective = j.at("objective").get<double>();
        s.iterations = j.at("iterations").get<std::int64_t>();
        s.years = j.at("years").get<std::vector<int>>();
        const std::size_t T = s.years.size();
        for (const auto& [key, tj] : j.at("technologies").items()) {
            const auto k = tech_index(parse_tech_or_throw(key));
            s.capacity_by_tech[k] = series(tj.at("capacity_mw"));
            s.new_by_tech[k] = series(tj.at("new_mw"));
            for (const auto& v : tj.at("realized_cf")) {
                s.realized_cf[k].push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
            }
            if (s.capacity_by_tech[k].size() != T || s.realized_cf[k].size() != T) {
                throw InputError("solution JSON: series length does not match years");
            }
        }
        s.transmission_mw = series(j.at("transmission").at("capacity_mw"));
        s.new_transmission_mw = series(j.at("transmission").at("new_mw"));
        s.storage_mw = series(j.at("storage").at("capacity_mw"));
        s.new_storage_mw = series(j.at("storage").at("new_mw"));
        for (const auto& g : j.at("generators")) {
            s.generators.push_back({g.at("bus").get<BusId>(), parse_tech_or_throw(g.at("tech").get<std::string>()),
                                    series(g.at("capacity_mw")), series(g.at("new_mw"))});
        }
        for (const auto& l : j.at("lines")) {
            s.lines.push_back({l.at("from").get<BusId>(), l.at("to").get<BusId>(), series(l.at("capacity_mw")),
                               series(l.at("new_mw"))});
        }
        for (const auto& st : j.at("storage_units")) {
            s.storage.push_back({st.at("bus").get<BusId>(), series(st.at("capacity_mw")), series(st.at("new_mw"))});
        }
        for (const auto& c : j.at("costs")) {
            YearCosts y;
            y.discount = c.at("discount").get<double>();
            y.gen_capex = c.at("gen_capex").get<double>();
            y.trans_capex = c.at("trans_capex").get<double>();
            y.stor_capex = c.at("stor_capex").get<double>();
            y.fixed_om = c.at("fixed_om").get<double>();
            y.variable = c.at("variable").get<double>();
            y.gen_curtailment = c.at("gen_curtailment").get<double>();
            y.dem_curtailment = c.at("dem_curtailment").get<double>();
            s.costs.push_back(y);
        }
        for (const auto& e : j.at("energy")) {
            YearEnergy y;
            y.generation_mwh = e.at("generation_mwh").get<double>();
            y.gen_curtailed_mwh = e.at("gen_curtailed_mwh").get<double>();
            y.charge_mwh = e.at("charge_mwh").get<double>();
            y.discharge_mwh = e.at("discharge_mwh").get<double>();
            y.demand_mwh = e.at("demand_mwh").get<double>();
            y.dem_curtailed_mwh = e.at("dem_curtailed_mwh").get<double>();
            s.energy.push_back(y);
        }
        if (s.transmission_mw.size() != T || s.storage_mw.size() != T || s.costs.size() != T ||
            s.energy.size() != T) {
            throw InputError("solution JSON: series length does not match years");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("solution JSON: ") + e.what());
    }
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) {
        Json gen = Json::object();
        for (TechKind tech : kAllTechs) gen[std::string(to_string(tech))] = r.new_gen_gw[tech_index(tech)];
        a.push_back({{"omega", r.omega},
                     {"status", r.status},
                     {"message", r.message},
                     {"objective", r.objective},
                     {"new_gen_gw", gen},
                     {"new_transmission_gw", r.new_transmission_gw},
                     {"new_storage_gw", r.new_storage_gw}});
    }
    return a.dump(2) + "\n";
}

} // namespace gridx
