// gridx: command line front end for the planning pipeline.

#include "gridx/cluster.hpp"
#include "gridx/demand.hpp"
#include "gridx/error.hpp"
#include "gridx/ingest.hpp"
#include "gridx/mps.hpp"
#include "gridx/pipeline.hpp"
#include "gridx/planner.hpp"
#include "gridx/report.hpp"
#include "gridx/serialize.hpp"
#include "gridx/solver.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace gridx;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError(fmt::format("'{}' is not an integer", item));
        }
    }
    if (out.empty()) throw InputError("empty integer list");
    return out;
}

std::string csv_of(const ProfileMatrix& m) {
    std::string s = "hour";
    for (BusId b : m.entities) s += fmt::format(",{}", b);
    s += '\n';
    for (int h = 0; h < kHoursPerYear; ++h) {
        s += std::to_string(h);
        for (const auto& series : m.values) s += ',' + fmt::format("{:.6g}", series[static_cast<std::size_t>(h)]);
        s += '\n';
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridx: capacity-expansion planning with DC power flow"};
    app.require_subcommand(1);
    std::string scenario_path;

    auto* validate = app.add_subcommand("validate", "Check a scenario and its data directory");
    validate->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);

    auto* cf = app.add_subcommand("cf", "Capacity factors from hourly generation");
    std::string cf_tech, cf_generation, cf_out;
    cf->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    cf->add_option("--tech", cf_tech, "solar or wind")->required();
    cf->add_option("--generation", cf_generation, "8760-hour generation CSV (MW, one column per bus)")
        ->required()
        ->check(CLI::ExistingFile);
    cf->add_option("--out", cf_out, "Output CSV")->required();

    auto* cluster = app.add_subcommand("cluster", "Cluster the year into representative days");
    std::string cluster_out, diag_out, diag_range = "2,10";
    cluster->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    cluster->add_option("--out", cluster_out, "Representative days JSON")->required();
    cluster->add_option("--diagnostics", diag_out, "Write inertia/silhouette per k to this CSV");
    cluster->add_option("--k-range", diag_range, "k range for diagnostics, e.g. 2,10");

    auto* regions = app.add_subcommand("regions", "Map buses to counties and relocate shares");
    std::string regions_out;
    regions->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    regions->add_option("--out", regions_out, "Region map JSON")->required();

    auto* demand = app.add_subcommand("demand", "Synthesize the demand cube");
    std::string demand_out, audit_dir;
    demand->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    demand->add_option("--out", demand_out, "Binary demand cube")->required();
    demand->add_option("--audit", audit_dir, "Directory for per-year CSV audit files");

    auto* build = app.add_subcommand("build", "Build the LP and write MPS");
    std::string build_out, stats_out, rows_out;
    bool no_names = false;
    build->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    build->add_option("--out", build_out, "MPS file")->required();
    build->add_option("--stats", stats_out, "Model statistics JSON");
    build->add_option("--rows", rows_out, "Row provenance JSONL");
    build->add_flag("--no-names", no_names, "Use generated C<j>/R<i> names");

    auto* solve = app.add_subcommand("solve", "Build and solve");
    std::string solve_out, solve_mps, solve_reports;
    solve->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    solve->add_option("--out", solve_out, "Solution JSON")->required();
    solve->add_option("--mps", solve_mps, "Also write the model as MPS");
    solve->add_option("--report-dir", solve_reports, "Also write report tables here");

    auto* report = app.add_subcommand("report", "Write report tables from a solution");
    std::string report_solution, report_dir;
    report->add_option("--solution", report_solution, "Solution JSON")->required()->check(CLI::ExistingFile);
    report->add_option("--out-dir", report_dir, "Output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "Construction-time sensitivity sweep");
    std::string sweep_tech, sweep_omega, sweep_out = "sweep.csv";
    unsigned jobs = 1;
    sweep->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    sweep->add_option("--tech", sweep_tech, "Technology whose lead time varies")->required();
    sweep->add_option("--omega", sweep_omega, "Comma-separated lead times in years")->required();
    sweep->add_option("--out", sweep_out, "Output CSV");
    sweep->add_option("--jobs", jobs, "Sweep points solved concurrently")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto scenario = scenario_path.empty() ? ScenarioConfig{} : load_scenario(scenario_path);

        if (*validate) {
            const auto inputs = load_inputs(scenario);
            const auto setup = setup_regions(scenario, inputs.topology);
            std::cout << fmt::format("ok: {} buses, {} generators, {} lines, {} years\n", inputs.topology.num_buses(),
                                     inputs.topology.generators.size(), inputs.topology.lines.size(),
                                     scenario.horizon.size());
            for (const auto& [from, to] : setup.dc.moved) std::cout << fmt::format("dc share {} -> {}\n", from, to);
            for (const auto& [from, to] : setup.em.moved) std::cout << fmt::format("em share {} -> {}\n", from, to);
        } else if (*cf) {
            const auto tech = parse_tech_or_throw(cf_tech);
            if (tech != TechKind::Solar && tech != TechKind::Wind) throw InputError("--tech must be solar or wind");
            const auto topo = load_topology(scenario.data_dir);
            std::map<BusId, double> caps;
            for (const auto& g : topo.generators) {
                if (g.tech == tech) caps[g.bus] += g.initial_capacity_mw;
            }
            const auto gen = load_profile_matrix(cf_generation, topo.num_buses(), ProfileUnit::Megawatts);
            std::size_t clamped = 0;
            write_text(cf_out, csv_of(compute_renewable_cf(gen, caps, &clamped)));
            if (clamped) std::cerr << fmt::format("warning: {} hours clamped to CF 1\n", clamped);
        } else if (*cluster) {
            const auto inputs = load_inputs(scenario);
            const auto n = inputs.topology.num_buses();
            write_text(cluster_out, repdays_to_json(cluster_days(inputs.profiles, n, scenario.clustering)));
            if (!diag_out.empty()) {
                const auto range = parse_int_list(diag_range);
                if (range.size() != 2) throw InputError("--k-range needs two values");
                const auto features = build_day_features(inputs.profiles, n);
                std::string csv = "k,inertia,silhouette\n";
                for (const auto& d : clustering_diagnostics(features, range[0], range[1], scenario.clustering.seed,
                                                            scenario.clustering.restarts,
                                                            scenario.clustering.max_iterations)) {
                    csv += fmt::format("{},{:.10g},{:.10g}\n", d.k, d.inertia, d.silhouette);
                }
                write_text(diag_out, csv);
            }
        } else if (*regions) {
            const auto topo = load_topology(scenario.data_dir);
            const auto setup = setup_regions(scenario, topo);
            write_text(regions_out, region_map_to_json(setup.map, setup.dc, setup.em));
        } else if (*demand) {
            const auto problem = prepare_problem(scenario);
            write_demand_cube(problem.demand, demand_out);
            if (!audit_dir.empty()) write_demand_audit(problem.demand, scenario.horizon, audit_dir);
        } else if (*build) {
            const auto problem = prepare_problem(scenario);
            const auto model = build_model(problem, {!no_names, !rows_out.empty()});
            write_mps(model.lp, fs::path(build_out));
            if (!stats_out.empty()) write_text(stats_out, stats_to_json(model.stats));
            if (!rows_out.empty()) write_row_provenance(model, problem, fs::path(rows_out));
            std::cout << fmt::format("{} variables, {} constraints, {} nonzeros\n", model.stats.n_vars,
                                     model.stats.n_constraints, model.stats.n_nonzeros);
        } else if (*solve) {
            const auto problem = prepare_problem(scenario);
            const auto solved = build_and_solve(problem);
            if (!solve_mps.empty()) write_mps(solved.model.lp, fs::path(solve_mps));
            if (solved.solution.status != LpStatus::Optimal) {
                std::cerr << fmt::format("solver status: {} {}\n", to_string(solved.solution.status),
                                         solved.solution.message);
                return 2;
            }
            const auto plan = extract_solution(solved.model, problem, solved.solution);
            write_text(solve_out, solution_to_json(plan));
            if (!solve_reports.empty()) write_reports(plan, solve_reports);
            std::cout << fmt::format("optimal: objective {:.6f} after {} iterations\n", plan.objective, plan.iterations);
        } else if (*report) {
            const auto plan = solution_from_json(read_text(report_solution));
            write_reports(plan, report_dir);
        } else if (*sweep) {
            const auto problem = prepare_problem(scenario);
            const auto rows =
                sweep_construction_time(problem, parse_tech_or_throw(sweep_tech), parse_int_list(sweep_omega),
                                        SweepOptions{jobs, BuildOptions{false, false}});
            write_text(sweep_out, sweep_table(rows).to_csv());
            for (const auto& r : rows) {
                if (!r.message.empty()) std::cerr << fmt::format("omega {}: {} {}\n", r.omega, r.status, r.message);
            }
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
