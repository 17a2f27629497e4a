#include "gridx/report.hpp"

#include "gridx/error.hpp"
#include "gridx/solver.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

namespace gridx {

namespace {

constexpr double kMwPerGw = 1000.0;

std::string gw(double mw) { return fmt::format("{:.2f}", mw / kMwPerGw); }

} // namespace

PlanSolution extract_solution(const PlanModel& model, const PlanningProblem& problem, const LpSolution& solution) {
    if (solution.status != LpStatus::Optimal) {
        throw SolverError(fmt::format("cannot report a {} solution", to_string(solution.status)));
    }
    const auto& vars = model.vars;
    const auto& topo = problem.topology;
    const auto& x = solution.x;
    const std::size_t T = vars.years();
    const int D = static_cast<int>(vars.days());
    const int H = static_cast<int>(vars.hours());
    const auto& w = problem.days.weight;
    using K = VarKind;

    PlanSolution out;
    out.status = std::string(to_string(solution.status));
    out.objective = solution.objective;
    out.iterations = solution.iterations;
    out.years = problem.scenario.horizon.years();

    for (TechKind tech : kAllTechs) {
        bool present = false;
        for (const auto& g : topo.generators) present = present || g.tech == tech;
        if (present) {
            out.capacity_by_tech[tech_index(tech)].assign(T, 0.0);
            out.new_by_tech[tech_index(tech)].assign(T, 0.0);
            out.realized_cf[tech_index(tech)].assign(T, std::nullopt);
        }
    }
    out.transmission_mw.assign(T, 0.0);
    out.new_transmission_mw.assign(T, 0.0);
    out.storage_mw.assign(T, 0.0);
    out.new_storage_mw.assign(T, 0.0);

    for (std::size_t g = 0; g < topo.generators.size(); ++g) {
        GenCapacity gc{topo.generators[g].bus, topo.generators[g].tech, std::vector<double>(T), std::vector<double>(T)};
        const auto k = tech_index(gc.tech);
        for (std::size_t t = 0; t < T; ++t) {
            gc.available_mw[t] = x[static_cast<std::size_t>(vars.col(K::CapGen, g, t))];
            gc.new_mw[t] = x[static_cast<std::size_t>(vars.col(K::NewGen, g, t))];
            out.capacity_by_tech[k][t] += gc.available_mw[t];
            out.new_by_tech[k][t] += gc.new_mw[t];
        }
        out.generators.push_back(std::move(gc));
    }
    for (std::size_t l = 0; l < topo.lines.size(); ++l) {
        LineCapacity lc{topo.lines[l].from, topo.lines[l].to, std::vector<double>(T), std::vector<double>(T)};
        for (std::size_t t = 0; t < T; ++t) {
            lc.available_mw[t] = x[static_cast<std::size_t>(vars.col(K::CapTrans, l, t))];
            lc.new_mw[t] = x[static_cast<std::size_t>(vars.col(K::NewTrans, l, t))];
            out.transmission_mw[t] += lc.available_mw[t];
            out.new_transmission_mw[t] += lc.new_mw[t];
        }
        out.lines.push_back(std::move(lc));
    }
    for (std::size_t n = 0; n < topo.num_buses(); ++n) {
        StorageCapacity sc{static_cast<BusId>(n), std::vector<double>(T), std::vector<double>(T)};
        for (std::size_t t = 0; t < T; ++t) {
            sc.available_mw[t] = x[static_cast<std::size_t>(vars.col(K::CapStor, n, t))];
            sc.new_mw[t] = x[static_cast<std::size_t>(vars.col(K::NewStor, n, t))];
            out.storage_mw[t] += sc.available_mw[t];
            out.new_storage_mw[t] += sc.new_mw[t];
        }
        out.storage.push_back(std::move(sc));
    }

    // Costs: every priced column contributes cost * value to its category.
    out.costs.assign(T, YearCosts{});
    for (std::size_t t = 0; t < T; ++t) out.costs[t].discount = model.discount[t];
    const auto& cols = model.lp.columns();
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].cost == 0.0) continue;
        const double v = cols[j].cost * x[j];
        const auto ref = vars.locate(static_cast<std::int32_t>(j));
        auto& c = out.costs[ref.t];
        switch (ref.kind) {
        case K::NewGen: c.gen_capex += v; break;
        case K::NewTrans: c.trans_capex += v; break;
        case K::NewStor: c.stor_capex += v; break;
        case K::CapGen:
        case K::CapTrans:
        case K::CapStor: c.fixed_om += v; break;
        case K::Gen: c.variable += v; break;
        case K::CurtGen: c.gen_curtailment += v; break;
        case K::CurtDem: c.dem_curtailment += v; break;
        default: throw ModelError(fmt::format("unexpected priced column {}", model.lp.column_name(static_cast<std::int32_t>(j))));
        }
    }

    // Weighted energies and realized capacity factors.
    out.energy.assign(T, YearEnergy{});
    auto weighted = [&](K kind, std::size_t e, std::size_t t) {
        double sum = 0.0;
        for (int d = 0; d < D; ++d) {
            double day = 0.0;
            for (int h = 0; h < H; ++h) day += x[static_cast<std::size_t>(vars.col(kind, e, t, d, h))];
            sum += w[static_cast<std::size_t>(d)] * day;
        }
        return sum;
    };
    for (std::size_t t = 0; t < T; ++t) {
        auto& en = out.energy[t];
        std::array<double, kNumTechs> tech_energy{};
        for (std::size_t g = 0; g < topo.generators.size(); ++g) {
            const double e = weighted(K::Gen, g, t);
            tech_energy[tech_index(topo.generators[g].tech)] += e;
            en.generation_mwh += e;
            en.gen_curtailed_mwh += weighted(K::CurtGen, g, t);
        }
        for (std::size_t n = 0; n < topo.num_buses(); ++n) {
            en.charge_mwh += weighted(K::Charge, n, t);
            en.discharge_mwh += weighted(K::Discharge, n, t);
            en.dem_curtailed_mwh += weighted(K::CurtDem, n, t);
        }
        en.demand_mwh = problem.demand.total_energy_mwh(t);
        for (std::size_t k = 0; k < kNumTechs; ++k) {
            if (out.capacity_by_tech[k].empty()) continue;
            const double cap = out.capacity_by_tech[k][t];
            if (cap > 0.0) out.realized_cf[k][t] = tech_energy[k] / (kHoursPerYear * cap);
        }
    }
    return out;
}

std::string Table::to_csv() const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
}

namespace {

std::vector<std::string> year_header(std::string first, const PlanSolution& sol) {
    std::vector<std::string> h{std::move(first)};
    for (int y : sol.years) h.push_back(std::to_string(y));
    return h;
}

} // namespace

Table capacity_table(const PlanSolution& sol) {
    Table table;
    table.header = year_header("capacity_gw", sol);
    const std::size_t T = sol.years.size();
    auto add = [&](std::string_view label, const std::vector<double>& mw) {
        std::vector<std::string> row{std::string(label)};
        for (std::size_t t = 0; t < T; ++t) row.push_back(gw(mw.empty() ? 0.0 : mw[t]));
        table.rows.push_back(std::move(row));
    };
    for (TechKind tech : kAllTechs) add(display_name(tech), sol.capacity_by_tech[tech_index(tech)]);
    add("Transmission", sol.transmission_mw);
    add("Storage", sol.storage_mw);
    return table;
}

double total_discounted_cost(const PlanSolution& sol) {
    double total = 0.0;
    for (const auto& c : sol.costs) total += c.total();
    return total;
}

Table cost_table(const PlanSolution& sol) {
    Table table;
    table.header = {"year",      "discount",    "capex",     "opex",      "total",
                    "capex_undiscounted", "opex_undiscounted", "total_undiscounted"};
    auto num = [](double v) { return fmt::format("{:.6f}", v); };
    double capex = 0.0, opex = 0.0, ucapex = 0.0, uopex = 0.0;
    for (std::size_t t = 0; t < sol.costs.size(); ++t) {
        const auto& c = sol.costs[t];
        const double uc = c.capex() / c.discount;
        const double uo = c.opex() / c.discount;
        capex += c.capex();
        opex += c.opex();
        ucapex += uc;
        uopex += uo;
        table.rows.push_back({std::to_string(sol.years[t]), fmt::format("{:.10f}", c.discount), num(c.capex()),
                              num(c.opex()), num(c.total()), num(uc), num(uo), num(uc + uo)});
    }
    table.rows.push_back({"total", "", num(capex), num(opex), num(capex + opex), num(ucapex), num(uopex),
                          num(ucapex + uopex)});
    return table;
}

std::vector<CurtailmentYear> curtailment_report(const PlanSolution& sol) {
    std::vector<CurtailmentYear> out;
    for (std::size_t t = 0; t < sol.energy.size(); ++t) {
        const auto& e = sol.energy[t];
        const double pct = e.demand_mwh > 0.0 ? 100.0 * e.dem_curtailed_mwh / e.demand_mwh : 0.0;
        out.push_back({sol.years[t], e.dem_curtailed_mwh, e.demand_mwh, pct});
    }
    return out;
}

Table curtailment_table(const PlanSolution& sol) {
    Table table;
    table.header = {"year", "curtailed_mwh", "demand_mwh", "percent"};
    for (const auto& c : curtailment_report(sol)) {
        table.rows.push_back({std::to_string(c.year), fmt::format("{:.3f}", c.curtailed_mwh),
                              fmt::format("{:.3f}", c.demand_mwh), fmt::format("{:.4f}", c.percent)});
    }
    return table;
}

Table capacity_factor_table(const PlanSolution& sol) {
    Table table;
    table.header = year_header("capacity_factor", sol);
    for (TechKind tech : kAllTechs) {
        const auto& cf = sol.realized_cf[tech_index(tech)];
        if (cf.empty()) continue;
        std::vector<std::string> row{std::string(display_name(tech))};
        for (const auto& v : cf) row.push_back(v ? fmt::format("{:.4f}", *v) : std::string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<double> energy_balance_residual(const PlanSolution& sol) {
    std::vector<double> r;
    for (const auto& e : sol.energy) {
        r.push_back(std::abs(e.supply_mwh() - e.served_mwh()) / std::max(1.0, std::abs(e.served_mwh())));
    }
    return r;
}

void write_reports(const PlanSolution& sol, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const char* name, const Table& table) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(fmt::format("cannot write '{}'", (dir / name).string()));
        out << table.to_csv();
    };
    write("capacity.csv", capacity_table(sol));
    write("costs.csv", cost_table(sol));
    write("curtailment.csv", curtailment_table(sol));
    write("capacity_factors.csv", capacity_factor_table(sol));
}

// ---------------------------------------------------------------------------

namespace {

SweepRow sweep_point(const PlanningProblem& base, TechKind tech, int omega, const BuildOptions& build) {
    SweepRow row;
    row.omega = omega;
    try {
        PlanningProblem p = base;
        if (!p.scenario.techs.contains(tech)) {
            throw InputError(fmt::format("{} is not in the catalog", to_string(tech)));
        }
        p.scenario.techs.at(tech).lead_time_years = omega;
        const auto model = build_model(p, build);
        const auto sol = solve_lp(model.lp, p.scenario.solver);
        row.status = std::string(to_string(sol.status));
        if (sol.status != LpStatus::Optimal) {
            row.message = sol.message;
            return row;
        }
        const auto plan = extract_solution(model, p, sol);
        row.objective = plan.objective;
        for (std::size_t k = 0; k < kNumTechs; ++k) {
            for (double v : plan.new_by_tech[k]) row.new_gen_gw[k] += v / kMwPerGw;
        }
        for (double v : plan.new_transmission_mw) row.new_transmission_gw += v / kMwPerGw;
        for (double v : plan.new_storage_mw) row.new_storage_gw += v / kMwPerGw;
    } catch (const std::exception& e) {
        row.status = "error";
        row.message = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> sweep_construction_time(const PlanningProblem& problem, TechKind tech,
                                              const std::vector<int>& omegas, const SweepOptions& options) {
    std::vector<SweepRow> rows(omegas.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(options.parallelism, static_cast<unsigned>(omegas.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < omegas.size(); i = next++) {
            rows[i] = sweep_point(problem, tech, omegas[i], options.build);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    return rows;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
    Table table;
    table.header = {"omega", "status", "objective"};
    for (TechKind tech : kAllTechs) table.header.push_back(fmt::format("new_{}_gw", to_string(tech)));
    table.header.push_back("new_transmission_gw");
    table.header.push_back("new_storage_gw");
    for (const auto& r : rows) {
        std::vector<std::string> cells{std::to_string(r.omega), r.status, fmt::format("{:.6f}", r.objective)};
        for (double v : r.new_gen_gw) cells.push_back(fmt::format("{:.6f}", v));
        cells.push_back(fmt::format("{:.6f}", r.new_transmission_gw));
        cells.push_back(fmt::format("{:.6f}", r.new_storage_gw));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

} // namespace gridx
