#include "gridx/planner.hpp"

#include "gridx/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>

namespace gridx {

std::string_view to_string(VarKind kind) noexcept {
    switch (kind) {
    case VarKind::NewGen: return "c_gen";
    case VarKind::NewTrans: return "c_trans";
    case VarKind::NewStor: return "c_stor";
    case VarKind::CapGen: return "C_gen";
    case VarKind::CapTrans: return "C_trans";
    case VarKind::CapStor: return "C_stor";
    case VarKind::Gen: return "p_gen";
    case VarKind::CurtGen: return "p_curt_gen";
    case VarKind::CurtDem: return "p_curt_dem";
    case VarKind::Flow: return "p_trans";
    case VarKind::Charge: return "p_charge";
    case VarKind::Discharge: return "p_disch";
    case VarKind::Energy: return "e_stor";
    case VarKind::DcLoad: return "p_DC";
    case VarKind::EmLoad: return "p_EOR";
    case VarKind::Angle: return "theta";
    case VarKind::EnergyInit: return "e_stor_init";
    }
    return "?";
}

std::string_view to_string(RowFamily family) noexcept {
    switch (family) {
    case RowFamily::GenCapacityLink: return "GenCapacityLink";
    case RowFamily::TransCapacityLink: return "TransCapacityLink";
    case RowFamily::StorCapacityLink: return "StorCapacityLink";
    case RowFamily::PeakAdequacy: return "PeakAdequacy";
    case RowFamily::PowerBalance: return "PowerBalance";
    case RowFamily::LineFlow: return "LineFlow";
    case RowFamily::DcRegionLoad: return "DcRegionLoad";
    case RowFamily::EmRegionLoad: return "EmRegionLoad";
    case RowFamily::ThermalMin: return "ThermalMin";
    case RowFamily::ThermalMax: return "ThermalMax";
    case RowFamily::RenewableOutput: return "RenewableOutput";
    case RowFamily::GenCurtailLimit: return "GenCurtailLimit";
    case RowFamily::RampUp: return "RampUp";
    case RowFamily::RampDown: return "RampDown";
    case RowFamily::RampDayUp: return "RampDayUp";
    case RowFamily::RampDayDown: return "RampDayDown";
    case RowFamily::TransLimitLower: return "TransLimitLower";
    case RowFamily::TransLimitUpper: return "TransLimitUpper";
    case RowFamily::StorageBalance: return "StorageBalance";
    case RowFamily::StorageDayLink: return "StorageDayLink";
    case RowFamily::StorageCycle: return "StorageCycle";
    case RowFamily::StorageEnergyCap: return "StorageEnergyCap";
    case RowFamily::ChargeCap: return "ChargeCap";
    case RowFamily::DischargeCap: return "DischargeCap";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// VarRegistry

VarRegistry::VarRegistry(std::array<std::size_t, kNumVarKinds> entities, std::size_t years, std::size_t days,
                         std::size_t hours)
    : years_(years), days_(days), hours_(hours) {
    std::size_t next = 0;
    for (std::size_t k = 0; k < kNumVarKinds; ++k) {
        blocks_[k].base = static_cast<std::int32_t>(next);
        blocks_[k].entities = entities[k];
        next += count(static_cast<VarKind>(k));
    }
    if (next > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw ModelError(fmt::format("model has {} columns, more than a 32-bit index can address", next));
    }
    total_ = next;
}

std::size_t VarRegistry::count(VarKind kind) const {
    const auto per_entity = is_hourly(kind) ? years_ * days_ * hours_ : years_;
    return block(kind).entities * per_entity;
}

std::int32_t VarRegistry::col(VarKind kind, std::size_t entity, std::size_t t) const {
    const auto& b = block(kind);
    return b.base + static_cast<std::int32_t>(entity * years_ + t);
}

std::int32_t VarRegistry::col(VarKind kind, std::size_t entity, std::size_t t, int d, int h) const {
    const auto& b = block(kind);
    const std::size_t idx =
        ((entity * years_ + t) * days_ + static_cast<std::size_t>(d)) * hours_ + static_cast<std::size_t>(h);
    return b.base + static_cast<std::int32_t>(idx);
}

VarRef VarRegistry::locate(std::int32_t col) const {
    if (col < 0 || static_cast<std::size_t>(col) >= total_) {
        throw ModelError(fmt::format("column {} out of range", col));
    }
    std::size_t k = kNumVarKinds - 1;
    while (count(static_cast<VarKind>(k)) == 0 || blocks_[k].base > col) --k;
    VarRef ref;
    ref.kind = static_cast<VarKind>(k);
    auto idx = static_cast<std::size_t>(col - blocks_[k].base);
    if (is_hourly(ref.kind)) {
        ref.h = static_cast<int>(idx % hours_);
        idx /= hours_;
        ref.d = static_cast<int>(idx % days_);
        idx /= days_;
    }
    ref.t = idx % years_;
    ref.entity = idx / years_;
    return ref;
}

// ---------------------------------------------------------------------------
// Builder

namespace {

std::string sanitize(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') c = '_';
    }
    return out;
}

class Builder {
public:
    Builder(const PlanningProblem& p, const BuildOptions& o) : p_(p), o_(o) {}

    PlanModel run() {
        check_inputs();
        layout();
        add_columns();
        add_rows();
        model_.lp.finalize();
        model_.stats = compute_stats(model_.lp, model_.vars, model_.row_tags);
        return std::move(model_);
    }

private:
    const PlanningProblem& p_;
    const BuildOptions& o_;
    PlanModel model_;

    std::size_t T_ = 0, D_ = 0, N_ = 0, G_ = 0, L_ = 0;
    static constexpr int H_ = kHoursPerDay;
    std::vector<std::vector<std::size_t>> lines_from_, lines_to_;
    std::vector<std::vector<std::size_t>> gens_at_;
    std::vector<std::vector<std::size_t>> dc_members_, em_members_; // region index -> p_DC / p_EOR entity
    std::vector<int> dc_entity_of_bus_, em_entity_of_bus_;

    int year(std::size_t t) const { return p_.scenario.horizon.year(t); }
    bool free_init() const { return p_.scenario.planner.storage_initial_state == StorageInitialState::Free; }

    void check_inputs() {
        const auto& s = p_.scenario;
        const auto& topo = p_.topology;
        T_ = s.horizon.size();
        D_ = static_cast<std::size_t>(p_.days.k);
        N_ = topo.num_buses();
        G_ = topo.generators.size();
        L_ = topo.lines.size();
        if (T_ == 0) throw InputError("horizon must be non-empty");
        if (N_ == 0) throw InputError("topology has no buses");
        if (D_ == 0 || p_.days.weight.size() != D_) throw InputError("representative days are missing");
        if (p_.days.num_buses != N_) {
            throw InputError(fmt::format("representative days cover {} buses, topology has {}", p_.days.num_buses, N_));
        }
        const auto& dem = p_.demand;
        if (dem.num_years != T_ || dem.num_days != D_ || dem.num_buses != N_) {
            throw InputError("demand cube dimensions do not match horizon, days and buses");
        }
        if (dem.peak.size() != T_) throw InputError("peak demand series does not match the horizon");
        for (const auto& g : topo.generators) {
            if (!s.techs.contains(g.tech)) {
                throw InputError(fmt::format("generator at bus {} uses {} which is not in the catalog", g.bus,
                                             to_string(g.tech)));
            }
            if (!is_thermal(g.tech) && !p_.days.has_profile(g.tech, g.bus)) {
                throw InputError(fmt::format("{} generator at bus {} has no capacity-factor profile",
                                             to_string(g.tech), g.bus));
            }
        }
        for (std::size_t t = 0; t < T_; ++t) {
            for (const auto& g : topo.generators) (void)s.techs.at(g.tech).costs(year(t));
            (void)s.storage.costs(year(t));
            (void)s.econ.trans_capex(year(t));
        }
        for (const auto& line : topo.lines) {
            if (!(line.reactance_pu > 0.0)) {
                throw InputError(fmt::format("line {}-{} has nonpositive reactance", line.from, line.to));
            }
        }
    }

    void layout() {
        const auto& topo = p_.topology;
        lines_from_.assign(N_, {});
        lines_to_.assign(N_, {});
        gens_at_.assign(N_, {});
        for (std::size_t l = 0; l < L_; ++l) {
            lines_from_[static_cast<std::size_t>(topo.lines[l].from)].push_back(l);
            lines_to_[static_cast<std::size_t>(topo.lines[l].to)].push_back(l);
        }
        for (std::size_t g = 0; g < G_; ++g) gens_at_[static_cast<std::size_t>(topo.generators[g].bus)].push_back(g);

        auto members = [&](const std::vector<RegionId>& regions, std::vector<BusId>& buses,
                           std::vector<std::vector<std::size_t>>& by_region, std::vector<int>& entity_of_bus) {
            std::set<BusId> all;
            for (const auto& r : regions) {
                const auto& in = p_.regions.buses_in(r);
                if (in.empty()) throw InputError(fmt::format("large-load region '{}' contains no bus", r));
                all.insert(in.begin(), in.end());
            }
            buses.assign(all.begin(), all.end());
            entity_of_bus.assign(N_, -1);
            for (std::size_t i = 0; i < buses.size(); ++i) entity_of_bus[static_cast<std::size_t>(buses[i])] = static_cast<int>(i);
            by_region.clear();
            for (const auto& r : regions) {
                auto& list = by_region.emplace_back();
                for (BusId b : p_.regions.buses_in(r)) list.push_back(static_cast<std::size_t>(entity_of_bus[static_cast<std::size_t>(b)]));
                std::sort(list.begin(), list.end());
            }
        };
        members(p_.demand.dc_regions, model_.dc_buses, dc_members_, dc_entity_of_bus_);
        members(p_.demand.em_regions, model_.em_buses, em_members_, em_entity_of_bus_);

        std::array<std::size_t, kNumVarKinds> ent{};
        auto set = [&](VarKind k, std::size_t n) { ent[static_cast<std::size_t>(k)] = n; };
        set(VarKind::NewGen, G_);
        set(VarKind::NewTrans, L_);
        set(VarKind::NewStor, N_);
        set(VarKind::CapGen, G_);
        set(VarKind::CapTrans, L_);
        set(VarKind::CapStor, N_);
        set(VarKind::Gen, G_);
        set(VarKind::CurtGen, G_);
        set(VarKind::CurtDem, N_);
        set(VarKind::Flow, L_);
        set(VarKind::Charge, N_);
        set(VarKind::Discharge, N_);
        set(VarKind::Energy, N_);
        set(VarKind::DcLoad, model_.dc_buses.size());
        set(VarKind::EmLoad, model_.em_buses.size());
        set(VarKind::Angle, N_);
        set(VarKind::EnergyInit, free_init() ? N_ : 0);
        model_.vars = VarRegistry(ent, T_, D_, H_);

        model_.line_length_mi.resize(L_);
        for (std::size_t l = 0; l < L_; ++l) {
            const auto& line = topo.lines[l];
            model_.line_length_mi[l] =
                line.length_mi ? *line.length_mi
                               : haversine_miles(topo.buses[static_cast<std::size_t>(line.from)].location(),
                                                 topo.buses[static_cast<std::size_t>(line.to)].location());
        }
        model_.discount.resize(T_);
        for (std::size_t t = 0; t < T_; ++t) model_.discount[t] = p_.scenario.econ.discount_factor(year(t));
        model_.reference_bus = topo.buses.front().id;
    }

    // -- naming -------------------------------------------------------------

    std::string gen_label(std::size_t g) const {
        const auto& gen = p_.topology.generators[g];
        return fmt::format("{},{}", gen.bus, short_code(gen.tech));
    }
    std::string line_label(std::size_t l) const {
        const auto& line = p_.topology.lines[l];
        return fmt::format("{}-{}", line.from, line.to);
    }
    std::string entity_label(VarKind k, std::size_t e) const {
        switch (k) {
        case VarKind::NewGen:
        case VarKind::CapGen:
        case VarKind::Gen:
        case VarKind::CurtGen: return gen_label(e);
        case VarKind::NewTrans:
        case VarKind::CapTrans:
        case VarKind::Flow: return line_label(e);
        case VarKind::DcLoad: return std::to_string(model_.dc_buses[e]);
        case VarKind::EmLoad: return std::to_string(model_.em_buses[e]);
        default: return std::to_string(e);
        }
    }

    // -- columns ------------------------------------------------------------

    void add_columns() {
        const auto& s = p_.scenario;
        const auto& econ = s.econ;
        const auto& topo = p_.topology;
        auto& lp = model_.lp;
        const auto& vars = model_.vars;
        lp.reserve(vars.size(), 0, 0);

        auto add = [&](VarKind k, std::size_t e, std::size_t t, int d, int h, double lo, double up, double cost) {
            std::string name;
            if (o_.with_names) {
                name = d < 0 ? fmt::format("{}({},{})", to_string(k), entity_label(k, e), year(t))
                             : fmt::format("{}({},{},{},{})", to_string(k), entity_label(k, e), year(t), d + 1, h + 1);
                name = sanitize(name);
            }
            [[maybe_unused]] const auto j = lp.add_column(std::move(name), lo, up, cost);
        };
        auto yearly = [&](std::size_t entities, auto fn) {
            for (std::size_t e = 0; e < entities; ++e)
                for (std::size_t t = 0; t < T_; ++t) fn(e, t);
        };
        auto hourly = [&](std::size_t entities, auto fn) {
            for (std::size_t e = 0; e < entities; ++e)
                for (std::size_t t = 0; t < T_; ++t)
                    for (int d = 0; d < static_cast<int>(D_); ++d)
                        for (int h = 0; h < H_; ++h) fn(e, t, d, h);
        };
        auto build_allowed = [&](int lead, std::optional<int> earliest, std::size_t t) {
            if (earliest && year(t) < *earliest) return false;
            if (s.planner.forbid_stranded_investment && t + static_cast<std::size_t>(lead) >= T_) return false;
            return true;
        };

        yearly(G_, [&](std::size_t g, std::size_t t) {
            const auto& entry = s.techs.at(topo.generators[g].tech);
            const double up = build_allowed(entry.lead_time_years, entry.earliest_build_year, t) ? econ.max_new_gen_mw : 0.0;
            add(VarKind::NewGen, g, t, -1, -1, 0.0, up, model_.discount[t] * entry.costs(year(t)).capex_per_mw);
        });
        yearly(L_, [&](std::size_t l, std::size_t t) {
            const double up = build_allowed(econ.transmission_lead_time_years, std::nullopt, t) ? econ.max_new_trans_mw : 0.0;
            add(VarKind::NewTrans, l, t, -1, -1, 0.0, up,
                model_.discount[t] * econ.trans_capex(year(t)) * model_.line_length_mi[l]);
        });
        yearly(N_, [&](std::size_t n, std::size_t t) {
            const double up = build_allowed(s.storage.lead_time_years, std::nullopt, t) ? econ.max_new_storage_mw : 0.0;
            add(VarKind::NewStor, n, t, -1, -1, 0.0, up, model_.discount[t] * s.storage.costs(year(t)).capex_per_mw);
        });
        yearly(G_, [&](std::size_t g, std::size_t t) {
            const auto& entry = s.techs.at(topo.generators[g].tech);
            add(VarKind::CapGen, g, t, -1, -1, 0.0, kInfinity, model_.discount[t] * entry.costs(year(t)).fom_per_mw_year);
        });
        yearly(L_,
               [&](std::size_t l, std::size_t t) { add(VarKind::CapTrans, l, t, -1, -1, 0.0, kInfinity, 0.0); });
        yearly(N_, [&](std::size_t n, std::size_t t) {
            add(VarKind::CapStor, n, t, -1, -1, 0.0, kInfinity,
                model_.discount[t] * s.storage.costs(year(t)).fom_per_mw_year);
        });

        const auto& w = p_.days.weight;
        hourly(G_, [&](std::size_t g, std::size_t t, int d, int h) {
            const auto tech = topo.generators[g].tech;
            const double cost = is_thermal(tech) ? model_.discount[t] * w[static_cast<std::size_t>(d)] *
                                                       s.techs.at(tech).costs(year(t)).variable_cost_per_mwh()
                                                 : 0.0;
            add(VarKind::Gen, g, t, d, h, 0.0, kInfinity, cost);
        });
        hourly(G_, [&](std::size_t g, std::size_t t, int d, int h) {
            add(VarKind::CurtGen, g, t, d, h, 0.0, kInfinity,
                model_.discount[t] * w[static_cast<std::size_t>(d)] * econ.gen_curtail_cost);
        });
        hourly(N_, [&](std::size_t n, std::size_t t, int d, int h) {
            add(VarKind::CurtDem, n, t, d, h, 0.0, kInfinity,
                model_.discount[t] * w[static_cast<std::size_t>(d)] * econ.demand_curtail_cost);
        });
        hourly(L_, [&](std::size_t l, std::size_t t, int d, int h) {
            add(VarKind::Flow, l, t, d, h, -kInfinity, kInfinity, 0.0);
        });
        for (VarKind k : {VarKind::Charge, VarKind::Discharge, VarKind::Energy}) {
            hourly(N_, [&](std::size_t n, std::size_t t, int d, int h) { add(k, n, t, d, h, 0.0, kInfinity, 0.0); });
        }
        hourly(model_.dc_buses.size(), [&](std::size_t e, std::size_t t, int d, int h) {
            add(VarKind::DcLoad, e, t, d, h, 0.0, kInfinity, 0.0);
        });
        hourly(model_.em_buses.size(), [&](std::size_t e, std::size_t t, int d, int h) {
            add(VarKind::EmLoad, e, t, d, h, 0.0, kInfinity, 0.0);
        });
        hourly(N_, [&](std::size_t n, std::size_t t, int d, int h) {
            const bool ref = static_cast<BusId>(n) == model_.reference_bus;
            add(VarKind::Angle, n, t, d, h, ref ? 0.0 : -std::numbers::pi, ref ? 0.0 : std::numbers::pi, 0.0);
        });
        if (free_init()) {
            yearly(N_,
                   [&](std::size_t n, std::size_t t) { add(VarKind::EnergyInit, n, t, -1, -1, 0.0, kInfinity, 0.0); });
        }
        if (lp.num_columns() != vars.size()) {
            throw ModelError("column layout does not match the registry");
        }
    }

    // -- rows ---------------------------------------------------------------

    std::int32_t row(RowFamily f, std::int32_t entity, std::string_view label, std::size_t t, int d, int h,
                     RowSense sense, double rhs) {
        std::string name;
        if (o_.with_names) {
            if (d < 0 && t == static_cast<std::size_t>(-1)) {
                name = fmt::format("{}({})", to_string(f), label);
            } else if (d < 0) {
                name = label.empty() ? fmt::format("{}({})", to_string(f), year(t))
                                     : fmt::format("{}({},{})", to_string(f), label, year(t));
            } else {
                name = label.empty() ? fmt::format("{}({},{},{})", to_string(f), year(t), d + 1, h + 1)
                                     : fmt::format("{}({},{},{},{})", to_string(f), label, year(t), d + 1, h + 1);
            }
            name = sanitize(name);
        }
        const auto i = model_.lp.add_row(std::move(name), sense, rhs);
        if (o_.with_row_tags) {
            model_.row_tags.push_back({f, entity, static_cast<std::int16_t>(t), static_cast<std::int16_t>(d),
                                       static_cast<std::int16_t>(h)});
        }
        return i;
    }

    void coef(std::int32_t r, std::int32_t c, double v) { model_.lp.add_coefficient(r, c, v); }

    std::string label_if(std::string s) const { return o_.with_names ? std::move(s) : std::string(); }

    void add_rows() {
        const auto& s = p_.scenario;
        const auto& topo = p_.topology;
        const auto& v = model_.vars;
        const int Di = static_cast<int>(D_);
        using K = VarKind;
        using F = RowFamily;

        // Capacity accumulation: C_t - sum_{t' <= t - lead} c_t' = initial.
        auto link = [&](F fam, K cap, K add, std::size_t entities, auto lead_of, auto initial_of, auto label_of) {
            for (std::size_t e = 0; e < entities; ++e) {
                const int lead = lead_of(e);
                for (std::size_t t = 0; t < T_; ++t) {
                    const auto r = row(fam, static_cast<std::int32_t>(e), label_if(label_of(e)), t, -1, -1,
                                       RowSense::Equal, initial_of(e));
                    coef(r, v.col(cap, e, t), 1.0);
                    for (std::size_t tp = 0; static_cast<int>(tp) + lead <= static_cast<int>(t); ++tp) {
                        coef(r, v.col(add, e, tp), -1.0);
                    }
                }
            }
        };
        link(
            F::GenCapacityLink, K::CapGen, K::NewGen, G_,
            [&](std::size_t g) { return s.techs.at(topo.generators[g].tech).lead_time_years; },
            [&](std::size_t g) { return topo.generators[g].initial_capacity_mw; },
            [&](std::size_t g) { return gen_label(g); });
        link(
            F::TransCapacityLink, K::CapTrans, K::NewTrans, L_,
            [&](std::size_t) { return s.econ.transmission_lead_time_years; },
            [&](std::size_t l) { return topo.lines[l].initial_capacity_mw; },
            [&](std::size_t l) { return line_label(l); });
        link(
            F::StorCapacityLink, K::CapStor, K::NewStor, N_, [&](std::size_t) { return s.storage.lead_time_years; },
            [&](std::size_t n) { return topo.initial_storage(static_cast<BusId>(n)); },
            [&](std::size_t n) { return std::to_string(n); });

        for (std::size_t t = 0; t < T_; ++t) {
            const auto r = row(F::PeakAdequacy, -1, "", t, -1, -1, RowSense::GreaterEqual, p_.demand.peak[t]);
            for (std::size_t g = 0; g < G_; ++g) coef(r, v.col(K::CapGen, g, t), 1.0);
        }

        // Nodal balance.
        for (std::size_t n = 0; n < N_; ++n) {
            const auto lbl = label_if(std::to_string(n));
            for (std::size_t t = 0; t < T_; ++t)
                for (int d = 0; d < Di; ++d)
                    for (int h = 0; h < H_; ++h) {
                        const auto r = row(F::PowerBalance, static_cast<std::int32_t>(n), lbl, t, d, h, RowSense::Equal,
                                           p_.demand.base_at(t, d, static_cast<BusId>(n), h));
                        for (std::size_t g : gens_at_[n]) {
                            coef(r, v.col(K::Gen, g, t, d, h), 1.0);
                            coef(r, v.col(K::CurtGen, g, t, d, h), -1.0);
                        }
                        for (std::size_t l : lines_from_[n]) coef(r, v.col(K::Flow, l, t, d, h), -1.0);
                        for (std::size_t l : lines_to_[n]) coef(r, v.col(K::Flow, l, t, d, h), 1.0);
                        coef(r, v.col(K::Discharge, n, t, d, h), 1.0);
                        coef(r, v.col(K::Charge, n, t, d, h), -1.0);
                        coef(r, v.col(K::CurtDem, n, t, d, h), 1.0);
                        if (int e = dc_entity_of_bus_[n]; e >= 0) {
                            coef(r, v.col(K::DcLoad, static_cast<std::size_t>(e), t, d, h), -1.0);
                        }
                        if (int e = em_entity_of_bus_[n]; e >= 0) {
                            coef(r, v.col(K::EmLoad, static_cast<std::size_t>(e), t, d, h), -1.0);
                        }
                    }
        }

        // DC power flow: p_trans - (S_base / X) (theta_from - theta_to) = 0.
        for (std::size_t l = 0; l < L_; ++l) {
            const auto& line = topo.lines[l];
            const double b = s.econ.s_base_mva / line.reactance_pu;
            const auto lbl = label_if(line_label(l));
            for (std::size_t t = 0; t < T_; ++t)
                for (int d = 0; d < Di; ++d)
                    for (int h = 0; h < H_; ++h) {
                        const auto r = row(F::LineFlow, static_cast<std::int32_t>(l), lbl, t, d, h, RowSense::Equal, 0.0);
                        coef(r, v.col(K::Flow, l, t, d, h), 1.0);
                        coef(r, v.col(K::Angle, static_cast<std::size_t>(line.from), t, d, h), -b);
                        coef(r, v.col(K::Angle, static_cast<std::size_t>(line.to), t, d, h), b);
                    }
        }

        // Large loads: the region's bus-level draws sum to its flat demand.
        auto region_rows = [&](F fam, K kind, const std::vector<RegionId>& regions,
                               const std::vector<std::vector<std::size_t>>& members, auto value) {
            for (std::size_t c = 0; c < regions.size(); ++c) {
                const auto lbl = label_if(regions[c]);
                for (std::size_t t = 0; t < T_; ++t)
                    for (int d = 0; d < Di; ++d)
                        for (int h = 0; h < H_; ++h) {
                            const auto r =
                                row(fam, static_cast<std::int32_t>(c), lbl, t, d, h, RowSense::Equal, value(c, t));
                            for (std::size_t e : members[c]) coef(r, v.col(kind, e, t, d, h), 1.0);
                        }
            }
        };
        region_rows(F::DcRegionLoad, K::DcLoad, p_.demand.dc_regions, dc_members_,
                    [&](std::size_t c, std::size_t t) { return p_.demand.dc_at(c, t); });
        region_rows(F::EmRegionLoad, K::EmLoad, p_.demand.em_regions, em_members_,
                    [&](std::size_t c, std::size_t t) { return p_.demand.em_at(c, t); });

        // Generator operating limits.
        auto gen_hourly = [&](F fam, bool thermal_only, bool renewable_only, auto body) {
            for (std::size_t g = 0; g < G_; ++g) {
                const auto tech = topo.generators[g].tech;
                if (thermal_only && !is_thermal(tech)) continue;
                if (renewable_only && is_thermal(tech)) continue;
                const auto lbl = label_if(gen_label(g));
                for (std::size_t t = 0; t < T_; ++t)
                    for (int d = 0; d < Di; ++d)
                        for (int h = 0; h < H_; ++h) body(fam, g, lbl, t, d, h);
            }
        };
        gen_hourly(F::ThermalMin, true, false, [&](F fam, std::size_t g, const std::string& lbl, std::size_t t, int d, int h) {
            const auto r = row(fam, static_cast<std::int32_t>(g), lbl, t, d, h, RowSense::GreaterEqual, 0.0);
            coef(r, v.col(K::Gen, g, t, d, h), 1.0);
            coef(r, v.col(K::CapGen, g, t), -s.techs.at(topo.generators[g].tech).f_min);
        });
        gen_hourly(F::ThermalMax, true, false, [&](F fam, std::size_t g, const std::string& lbl, std::size_t t, int d, int h) {
            const auto r = row(fam, static_cast<std::int32_t>(g), lbl, t, d, h, RowSense::LessEqual, 0.0);
            coef(r, v.col(K::Gen, g, t, d, h), 1.0);
            coef(r, v.col(K::CapGen, g, t), -s.techs.at(topo.generators[g].tech).f_max);
        });
        gen_hourly(F::RenewableOutput, false, true,
                   [&](F fam, std::size_t g, const std::string& lbl, std::size_t t, int d, int h) {
                       const auto& gen = topo.generators[g];
                       const auto r = row(fam, static_cast<std::int32_t>(g), lbl, t, d, h, RowSense::Equal, 0.0);
                       coef(r, v.col(K::Gen, g, t, d, h), 1.0);
                       coef(r, v.col(K::CapGen, g, t), -p_.days.cf(gen.tech, d, gen.bus, h));
                   });
        gen_hourly(F::GenCurtailLimit, false, false,
                   [&](F fam, std::size_t g, const std::string& lbl, std::size_t t, int d, int h) {
                       const auto r = row(fam, static_cast<std::int32_t>(g), lbl, t, d, h, RowSense::LessEqual, 0.0);
                       coef(r, v.col(K::CurtGen, g, t, d, h), 1.0);
                       coef(r, v.col(K::Gen, g, t, d, h), -1.0);
                   });

        // Ramping of thermal units, within a day and across consecutive days.
        auto ramp = [&](F fam, bool up, bool across_days) {
            for (std::size_t g = 0; g < G_; ++g) {
                const auto tech = topo.generators[g].tech;
                if (!is_thermal(tech)) continue;
                const double rate = s.techs.at(tech).ramp;
                const auto lbl = label_if(gen_label(g));
                for (std::size_t t = 0; t < T_; ++t)
                    for (int d = across_days ? 1 : 0; d < Di; ++d)
                        for (int h = across_days ? 0 : 1; h < (across_days ? 1 : H_); ++h) {
                            const int pd = across_days ? d - 1 : d;
                            const int ph = across_days ? H_ - 1 : h - 1;
                            const auto r = row(fam, static_cast<std::int32_t>(g), lbl, t, d, h,
                                               up ? RowSense::LessEqual : RowSense::GreaterEqual, 0.0);
                            coef(r, v.col(K::Gen, g, t, d, h), 1.0);
                            coef(r, v.col(K::Gen, g, t, pd, ph), -1.0);
                            coef(r, v.col(K::CapGen, g, t), up ? -rate : rate);
                        }
            }
        };
        ramp(F::RampUp, true, false);
        ramp(F::RampDown, false, false);
        ramp(F::RampDayUp, true, true);
        ramp(F::RampDayDown, false, true);

        // Thermal limits on corridors: -C <= p_trans <= C.
        for (F fam : {F::TransLimitLower, F::TransLimitUpper}) {
            const bool lower = fam == F::TransLimitLower;
            for (std::size_t l = 0; l < L_; ++l) {
                const auto lbl = label_if(line_label(l));
                for (std::size_t t = 0; t < T_; ++t)
                    for (int d = 0; d < Di; ++d)
                        for (int h = 0; h < H_; ++h) {
                            const auto r = row(fam, static_cast<std::int32_t>(l), lbl, t, d, h,
                                               lower ? RowSense::GreaterEqual : RowSense::LessEqual, 0.0);
                            coef(r, v.col(K::Flow, l, t, d, h), 1.0);
                            coef(r, v.col(K::CapTrans, l, t), lower ? 1.0 : -1.0);
                        }
            }
        }

        // Storage state of charge: e_h - e_prev - eta_c p_ch + p_dis / eta_d = 0.
        const double eta_c = s.storage.eta_charge;
        const double eta_d = s.storage.eta_discharge;
        for (std::size_t n = 0; n < N_; ++n) {
            const auto lbl = label_if(std::to_string(n));
            for (std::size_t t = 0; t < T_; ++t)
                for (int d = 0; d < Di; ++d)
                    for (int h = 0; h < H_; ++h) {
                        F fam = F::StorageBalance;
                        std::int32_t prev = -1;
                        if (h > 0) {
                            prev = v.col(K::Energy, n, t, d, h - 1);
                        } else if (d > 0) {
                            fam = F::StorageDayLink;
                            prev = v.col(K::Energy, n, t, d - 1, H_ - 1);
                        } else if (free_init()) {
                            prev = v.col(K::EnergyInit, n, t);
                        } else {
                            fam = F::StorageCycle;
                            prev = v.col(K::Energy, n, t, Di - 1, H_ - 1);
                        }
                        const auto r = row(fam, static_cast<std::int32_t>(n), lbl, t, d, h, RowSense::Equal, 0.0);
                        coef(r, v.col(K::Energy, n, t, d, h), 1.0);
                        coef(r, prev, -1.0);
                        coef(r, v.col(K::Charge, n, t, d, h), -eta_c);
                        coef(r, v.col(K::Discharge, n, t, d, h), 1.0 / eta_d);
                    }
        }

        const double duration = s.storage.duration_hours;
        auto stor_cap = [&](F fam, K kind, double factor) {
            for (std::size_t n = 0; n < N_; ++n) {
                const auto lbl = label_if(std::to_string(n));
                for (std::size_t t = 0; t < T_; ++t)
                    for (int d = 0; d < Di; ++d)
                        for (int h = 0; h < H_; ++h) {
                            const auto r = row(fam, static_cast<std::int32_t>(n), lbl, t, d, h, RowSense::LessEqual, 0.0);
                            coef(r, v.col(kind, n, t, d, h), 1.0);
                            coef(r, v.col(K::CapStor, n, t), -factor);
                        }
                if (fam == F::StorageEnergyCap && free_init()) {
                    for (std::size_t t = 0; t < T_; ++t) {
                        const auto r = row(fam, static_cast<std::int32_t>(n), lbl, t, -1, -1, RowSense::LessEqual, 0.0);
                        coef(r, v.col(K::EnergyInit, n, t), 1.0);
                        coef(r, v.col(K::CapStor, n, t), -factor);
                    }
                }
            }
        };
        stor_cap(F::StorageEnergyCap, K::Energy, duration);
        stor_cap(F::ChargeCap, K::Charge, 1.0);
        stor_cap(F::DischargeCap, K::Discharge, 1.0);
    }
};

} // namespace

PlanModel build_model(const PlanningProblem& problem, const BuildOptions& options) {
    return Builder(problem, options).run();
}

PlanModelStats compute_stats(const LpModel& lp, const VarRegistry& vars, const std::vector<RowTag>& tags) {
    PlanModelStats st;
    st.n_vars = lp.num_columns();
    st.n_constraints = lp.num_rows();
    st.n_nonzeros = lp.num_nonzeros();
    for (std::size_t k = 0; k < kNumVarKinds; ++k) {
        const auto kind = static_cast<VarKind>(k);
        if (const auto c = vars.count(kind); c > 0) st.vars_by_kind[std::string(to_string(kind))] = c;
    }
    for (const auto& tag : tags) ++st.rows_by_family[std::string(to_string(tag.family))];
    return st;
}

void write_row_provenance(const PlanModel& model, const PlanningProblem& problem, std::ostream& out) {
    if (model.row_tags.size() != model.lp.num_rows()) {
        throw ModelError("model was built without row tags");
    }
    const auto& topo = problem.topology;
    for (std::size_t i = 0; i < model.row_tags.size(); ++i) {
        const auto& tag = model.row_tags[i];
        nlohmann::ordered_json j;
        j["row"] = i;
        j["name"] = model.lp.row_name(static_cast<std::int32_t>(i));
        j["family"] = to_string(tag.family);
        const auto e = static_cast<std::size_t>(tag.entity);
        switch (tag.family) {
        case RowFamily::GenCapacityLink:
        case RowFamily::ThermalMin:
        case RowFamily::ThermalMax:
        case RowFamily::RenewableOutput:
        case RowFamily::GenCurtailLimit:
        case RowFamily::RampUp:
        case RowFamily::RampDown:
        case RowFamily::RampDayUp:
        case RowFamily::RampDayDown:
            j["bus"] = topo.generators[e].bus;
            j["tech"] = to_string(topo.generators[e].tech);
            break;
        case RowFamily::TransCapacityLink:
        case RowFamily::LineFlow:
        case RowFamily::TransLimitLower:
        case RowFamily::TransLimitUpper:
            j["from"] = topo.lines[e].from;
            j["to"] = topo.lines[e].to;
            break;
        case RowFamily::DcRegionLoad: j["region"] = problem.demand.dc_regions[e]; break;
        case RowFamily::EmRegionLoad: j["region"] = problem.demand.em_regions[e]; break;
        case RowFamily::PeakAdequacy: break;
        default: j["bus"] = tag.entity; break;
        }
        if (tag.t >= 0) j["year"] = problem.scenario.horizon.year(static_cast<std::size_t>(tag.t));
        if (tag.d >= 0) {
            j["day"] = tag.d + 1;
            j["hour"] = tag.h + 1;
        }
        out << j.dump() << '\n';
    }
}

void write_row_provenance(const PlanModel& model, const PlanningProblem& problem, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    write_row_provenance(model, problem, out);
}

} // namespace gridx
