#pragma once

#include "gridx/domain.hpp"
#include "gridx/lp_model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace gridx {

struct SimplexOptions {
    double feasibility_tolerance = 1e-7;
    double optimality_tolerance = 1e-7;
    std::optional<std::int64_t> max_iterations; // default 10 * (rows + cols)
    int refactor_interval = 100;
    bool scale = true;
};

/// Bounded revised simplex for desk-scale models. Each row gets a logical
/// variable so the working system is [A | -I] (x, r) = 0 with bounds on both
/// parts. Phase one minimizes the sum of bound violations of basic
/// variables; phase two follows from the same basis. Throws SolverError if
/// the basis stays singular after refactorization.
LpSolution solve_simplex(const LpModel& model, const SimplexOptions& options = {});

/// Writes the model to MPS, runs `command` with {mps} and {solution}
/// substituted, then reads `<column> <value>` lines. Lines whose first token
/// is not a column name are ignored, so headers such as "Objective ..." are
/// tolerated. Missing columns read as zero.
LpSolution solve_external(const LpModel& model, const std::string& command,
                          const std::filesystem::path& work_dir = {});

/// Parses a solution file in the external-backend format.
LpSolution read_solution_file(const LpModel& model, const std::filesystem::path& path);

/// Dispatches on settings.backend ("simplex" or "external").
LpSolution solve_lp(const LpModel& model, const SolverSettings& settings);

} // namespace gridx
