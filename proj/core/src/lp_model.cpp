#include "gridx/lp_model.hpp"

#include "gridx/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace gridx {

namespace {
constexpr double kInf() { return std::numeric_limits<double>::infinity(); }
} // namespace

std::string_view to_string(LpStatus status) noexcept {
    switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
    }
    return "unknown";
}

void LpModel::require_open() const {
    if (finalized_) {
        throw ModelError("model is finalized");
    }
}

std::int32_t LpModel::add_column(std::string name, double lower, double upper, double cost) {
    require_open();
    columns_.push_back({std::move(name), lower, upper, cost});
    return static_cast<std::int32_t>(columns_.size() - 1);
}

std::int32_t LpModel::add_row(std::string name, RowSense sense, double rhs) {
    require_open();
    rows_.push_back({std::move(name), sense, rhs});
    return static_cast<std::int32_t>(rows_.size() - 1);
}

void LpModel::add_coefficient(std::int32_t row, std::int32_t col, double value) {
    require_open();
    triplets_.push_back({row, col, value});
}

void LpModel::set_cost(std::int32_t col, double cost) {
    require_open();
    columns_.at(static_cast<std::size_t>(col)).cost = cost;
}

void LpModel::set_bounds(std::int32_t col, double lower, double upper) {
    require_open();
    auto& c = columns_.at(static_cast<std::size_t>(col));
    c.lower = lower;
    c.upper = upper;
}

void LpModel::set_rhs(std::int32_t row, double rhs) {
    require_open();
    rows_.at(static_cast<std::size_t>(row)).rhs = rhs;
}

void LpModel::reserve(std::size_t columns, std::size_t rows, std::size_t nonzeros) {
    columns_.reserve(columns);
    rows_.reserve(rows);
    triplets_.reserve(nonzeros);
}

void LpModel::finalize() {
    if (finalized_) {
        return;
    }
    const auto ncols = static_cast<std::int32_t>(columns_.size());
    const auto nrows = static_cast<std::int32_t>(rows_.size());
    for (std::int32_t j = 0; j < ncols; ++j) {
        const auto& c = columns_[static_cast<std::size_t>(j)];
        if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower == kInf() || c.upper == -kInf()) {
            throw ModelError(fmt::format("column {}: invalid bounds [{}, {}]", column_name(j), c.lower, c.upper));
        }
        if (c.lower > c.upper) {
            throw ModelError(fmt::format("column {}: lower bound {} exceeds upper bound {}", column_name(j), c.lower,
                                         c.upper));
        }
        if (!std::isfinite(c.cost)) {
            throw ModelError(fmt::format("column {}: non-finite cost", column_name(j)));
        }
    }
    for (std::int32_t i = 0; i < nrows; ++i) {
        if (!std::isfinite(rows_[static_cast<std::size_t>(i)].rhs)) {
            throw ModelError(fmt::format("row {}: non-finite right-hand side", row_name(i)));
        }
    }
    for (const auto& t : triplets_) {
        if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
            throw ModelError(fmt::format("coefficient ({}, {}) outside the model", t.row, t.col));
        }
        if (!std::isfinite(t.value)) {
            throw ModelError(fmt::format("non-finite coefficient at ({}, {})", row_name(t.row), column_name(t.col)));
        }
    }

    std::stable_sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    std::size_t out = 0;
    for (std::size_t k = 0; k < triplets_.size();) {
        Triplet merged = triplets_[k];
        std::size_t next = k + 1;
        while (next < triplets_.size() && triplets_[next].row == merged.row && triplets_[next].col == merged.col) {
            merged.value += triplets_[next].value;
            ++next;
        }
        if (merged.value != 0.0) {
            triplets_[out++] = merged;
        }
        k = next;
    }
    triplets_.resize(out);
    triplets_.shrink_to_fit();

    col_start_.assign(columns_.size() + 1, 0);
    for (const auto& t : triplets_) {
        ++col_start_[static_cast<std::size_t>(t.col) + 1];
    }
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        col_start_[j + 1] += col_start_[j];
    }
    finalized_ = true;
}

std::span<const Triplet> LpModel::column_entries(std::int32_t j) const {
    if (!finalized_) {
        throw ModelError("column access requires a finalized model");
    }
    const auto idx = static_cast<std::size_t>(j);
    return std::span<const Triplet>(triplets_).subspan(col_start_[idx], col_start_[idx + 1] - col_start_[idx]);
}

std::string LpModel::column_name(std::int32_t j) const {
    const auto& name = columns_.at(static_cast<std::size_t>(j)).name;
    return name.empty() ? fmt::format("C{}", j) : name;
}

std::string LpModel::row_name(std::int32_t i) const {
    const auto& name = rows_.at(static_cast<std::size_t>(i)).name;
    return name.empty() ? fmt::format("R{}", i) : name;
}

std::vector<double> LpModel::row_activity(std::span<const double> x) const {
    std::vector<double> ax(rows_.size(), 0.0);
    for (const auto& t : triplets_) {
        ax[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
    }
    return ax;
}

double LpModel::objective_value(std::span<const double> x) const {
    double obj = 0.0;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        obj += columns_[j].cost * x[j];
    }
    return obj;
}

double LpModel::max_violation(std::span<const double> x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        worst = std::max({worst, columns_[j].lower - x[j], x[j] - columns_[j].upper});
    }
    const auto ax = row_activity(x);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double r = ax[i] - rows_[i].rhs;
        switch (rows_[i].sense) {
        case RowSense::LessEqual: worst = std::max(worst, r); break;
        case RowSense::GreaterEqual: worst = std::max(worst, -r); break;
        case RowSense::Equal: worst = std::max(worst, std::abs(r)); break;
        }
    }
    return worst;
}

} // namespace gridx
