#pragma once

// JSON forms of solver outputs. Keys are emitted in a fixed order so equal
// inputs give byte-identical files.

#include "gridx/planner.hpp"
#include "gridx/report.hpp"

#include <string>
#include <string_view>

namespace gridx {

std::string stats_to_json(const PlanModelStats& stats);

std::string solution_to_json(const PlanSolution& solution);
PlanSolution solution_from_json(std::string_view text);

std::string sweep_to_json(const std::vector<SweepRow>& rows);

} // namespace gridx
