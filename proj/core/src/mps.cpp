#include "gridx/mps.hpp"

#include "gridx/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace gridx {

namespace {

constexpr std::string_view kObjRow = "OBJ";

char sense_code(RowSense sense) {
    switch (sense) {
    case RowSense::LessEqual: return 'L';
    case RowSense::GreaterEqual: return 'G';
    case RowSense::Equal: return 'E';
    }
    return 'E';
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

void check_name(const std::string& name, std::string_view what) {
    for (char c : name) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            throw ModelError(fmt::format("{} name '{}' contains whitespace", what, name));
        }
    }
}

} // namespace

void write_mps(const LpModel& model, std::ostream& out) {
    if (!model.finalized()) {
        throw ModelError("write_mps requires a finalized model");
    }
    const auto nrows = static_cast<std::int32_t>(model.num_rows());
    const auto ncols = static_cast<std::int32_t>(model.num_columns());

    std::vector<std::string> row_names(static_cast<std::size_t>(nrows));
    std::unordered_set<std::string> seen;
    seen.reserve(static_cast<std::size_t>(nrows));
    for (std::int32_t i = 0; i < nrows; ++i) {
        auto name = model.row_name(i);
        check_name(name, "row");
        if (name == kObjRow) {
            throw ModelError("row name 'OBJ' is reserved for the objective");
        }
        if (!seen.insert(name).second) {
            throw ModelError(fmt::format("duplicate row name '{}'", name));
        }
        row_names[static_cast<std::size_t>(i)] = std::move(name);
    }

    std::string buf;
    buf.reserve(1 << 16);
    auto flush = [&] {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
    };

    buf += fmt::format("NAME {}\n", model.name().empty() ? "gridx" : model.name());
    buf += "ROWS\n";
    buf += fmt::format(" N {}\n", kObjRow);
    for (std::int32_t i = 0; i < nrows; ++i) {
        buf += fmt::format(" {} {}\n", sense_code(model.row(i).sense), row_names[static_cast<std::size_t>(i)]);
        if (buf.size() > (1 << 20)) flush();
    }

    buf += "COLUMNS\n";
    std::vector<std::string> col_names(static_cast<std::size_t>(ncols));
    seen.clear();
    seen.reserve(static_cast<std::size_t>(ncols));
    for (std::int32_t j = 0; j < ncols; ++j) {
        auto name = model.column_name(j);
        check_name(name, "column");
        if (!seen.insert(name).second) {
            throw ModelError(fmt::format("duplicate column name '{}'", name));
        }
        const auto entries = model.column_entries(j);
        const double cost = model.column(j).cost;
        if (cost != 0.0 || entries.empty()) {
            buf += fmt::format(" {} {} {}\n", name, kObjRow, num(cost));
        }
        for (const auto& t : entries) {
            buf += fmt::format(" {} {} {}\n", name, row_names[static_cast<std::size_t>(t.row)], num(t.value));
        }
        col_names[static_cast<std::size_t>(j)] = std::move(name);
        if (buf.size() > (1 << 20)) flush();
    }

    buf += "RHS\n";
    for (std::int32_t i = 0; i < nrows; ++i) {
        const double rhs = model.row(i).rhs;
        if (rhs != 0.0) {
            buf += fmt::format(" RHS {} {}\n", row_names[static_cast<std::size_t>(i)], num(rhs));
        }
        if (buf.size() > (1 << 20)) flush();
    }

    buf += "BOUNDS\n";
    for (std::int32_t j = 0; j < ncols; ++j) {
        const auto& c = model.column(j);
        const auto& name = col_names[static_cast<std::size_t>(j)];
        const bool lo_inf = std::isinf(c.lower);
        const bool up_inf = std::isinf(c.upper);
        if (lo_inf && up_inf) {
            buf += fmt::format(" FR BND {}\n", name);
        } else if (c.lower == c.upper) {
            buf += fmt::format(" LO BND {} {}\n UP BND {} {}\n", name, num(c.lower), name, num(c.upper));
        } else {
            if (lo_inf) {
                buf += fmt::format(" MI BND {}\n", name);
            } else if (c.lower != 0.0) {
                buf += fmt::format(" LO BND {} {}\n", name, num(c.lower));
            }
            if (!up_inf) {
                buf += fmt::format(" UP BND {} {}\n", name, num(c.upper));
            }
        }
        if (buf.size() > (1 << 20)) flush();
    }
    buf += "ENDATA\n";
    flush();
}

void write_mps(const LpModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(fmt::format("cannot write '{}'", path.string()));
    }
    write_mps(model, out);
    out.flush();
    if (!out) {
        throw Error(fmt::format("write to '{}' failed", path.string()));
    }
}

std::string to_mps_string(const LpModel& model) {
    std::ostringstream out;
    write_mps(model, out);
    return out.str();
}

} // namespace gridx
