#include "gridx/error.hpp"
#include "gridx/mps.hpp"
#include "gridx/solver.hpp"

#include <fmt/format.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

namespace gridx {

namespace {

std::string replace_all(std::string text, std::string_view key, const std::string& value) {
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
        text.replace(pos, key.size(), value);
    }
    return text;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::filesystem::path scratch_dir() {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               fmt::format("gridx-{}-{}", static_cast<long>(::getpid()), counter.fetch_add(1));
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

LpSolution read_solution_file(const LpModel& model, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw SolverError(fmt::format("external solver produced no solution file '{}'", path.string()));
    }
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(model.num_columns());
    for (std::size_t j = 0; j < model.num_columns(); ++j) {
        index.emplace(model.column_name(static_cast<std::int32_t>(j)), j);
    }

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(model.num_columns(), 0.0);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string name, value;
        if (!(fields >> name >> value)) continue;
        if (name == "status") {
            if (value == "infeasible") sol.status = LpStatus::Infeasible;
            else if (value == "unbounded") sol.status = LpStatus::Unbounded;
            else if (value == "iteration_limit") sol.status = LpStatus::IterationLimit;
            continue;
        }
        auto it = index.find(name);
        if (it == index.end()) continue;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw SolverError(fmt::format("{}: bad value '{}' for column {}", path.string(), value, name));
        }
        sol.x[it->second] = v;
    }
    sol.objective = model.objective_value(sol.x);
    return sol;
}

LpSolution solve_external(const LpModel& model, const std::string& command, const std::filesystem::path& work_dir) {
    if (command.find("{mps}") == std::string::npos || command.find("{solution}") == std::string::npos) {
        throw SolverError("external solver command must contain {mps} and {solution}");
    }
    const auto dir = work_dir.empty() ? scratch_dir() : work_dir;
    std::filesystem::create_directories(dir);
    const auto mps_path = dir / "model.mps";
    const auto sol_path = dir / "solution.txt";
    std::filesystem::remove(sol_path);
    write_mps(model, mps_path);

    std::string cmd = replace_all(command, "{mps}", shell_quote(mps_path.string()));
    cmd = replace_all(cmd, "{solution}", shell_quote(sol_path.string()));
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
        throw SolverError(fmt::format("external solver command failed with status {}: {}", rc, cmd));
    }
    return read_solution_file(model, sol_path);
}

LpSolution solve_lp(const LpModel& model, const SolverSettings& settings) {
    if (settings.backend == "external") {
        return solve_external(model, settings.command);
    }
    if (settings.backend != "simplex") {
        throw SolverError(fmt::format("unknown solver backend '{}'", settings.backend));
    }
    SimplexOptions options;
    options.feasibility_tolerance = settings.tolerance;
    options.optimality_tolerance = settings.tolerance;
    options.max_iterations = settings.max_iterations;
    return solve_simplex(model, options);
}

} // namespace gridx
