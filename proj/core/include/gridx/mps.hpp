#pragma once

#include "gridx/lp_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace gridx {

/// Free-format MPS. The objective row is named OBJ; numbers use up to 17
/// significant digits so values round-trip exactly. Output order follows the
/// model's row order and column-major triplet order, so identical models
/// give identical bytes.
void write_mps(const LpModel& model, std::ostream& out);
void write_mps(const LpModel& model, const std::filesystem::path& path);
std::string to_mps_string(const LpModel& model);

} // namespace gridx
