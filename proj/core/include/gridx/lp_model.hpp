#pragma once

// Minimal LP container: columns with bounds and costs, rows with a sense and
// right-hand side, and a list of coefficient triplets. The objective is
// always minimized.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gridx {

enum class RowSense : std::uint8_t { LessEqual, GreaterEqual, Equal };

struct LpColumn {
    std::string name; // may be empty; writers generate C<index>
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    double cost = 0.0;
};

struct LpRow {
    std::string name; // may be empty; writers generate R<index>
    RowSense sense = RowSense::Equal;
    double rhs = 0.0;
};

struct Triplet {
    std::int32_t row = 0;
    std::int32_t col = 0;
    double value = 0.0;
    friend bool operator==(const Triplet&, const Triplet&) = default;
};

class LpModel {
public:
    explicit LpModel(std::string name = "gridx") : name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

    std::int32_t add_column(std::string name, double lower, double upper, double cost = 0.0);
    std::int32_t add_row(std::string name, RowSense sense, double rhs);
    void add_coefficient(std::int32_t row, std::int32_t col, double value);

    void set_cost(std::int32_t col, double cost);
    void set_bounds(std::int32_t col, double lower, double upper);
    void set_rhs(std::int32_t row, double rhs);
    void reserve(std::size_t columns, std::size_t rows, std::size_t nonzeros);

    /// Sums duplicate (row, col) entries, drops exact zeros, sorts triplets
    /// column-major and builds column starts. Throws ModelError on
    /// non-finite data or inconsistent bounds. Further edits are rejected.
    void finalize();
    bool finalized() const noexcept { return finalized_; }

    std::size_t num_columns() const noexcept { return columns_.size(); }
    std::size_t num_rows() const noexcept { return rows_.size(); }
    std::size_t num_nonzeros() const noexcept { return triplets_.size(); }

    const std::vector<LpColumn>& columns() const noexcept { return columns_; }
    const std::vector<LpRow>& rows() const noexcept { return rows_; }
    const LpColumn& column(std::int32_t j) const { return columns_.at(static_cast<std::size_t>(j)); }
    const LpRow& row(std::int32_t i) const { return rows_.at(static_cast<std::size_t>(i)); }
    const std::vector<Triplet>& triplets() const noexcept { return triplets_; }

    /// Triplets of column j; only valid after finalize().
    std::span<const Triplet> column_entries(std::int32_t j) const;

    std::string column_name(std::int32_t j) const;
    std::string row_name(std::int32_t i) const;

    /// A*x for every row.
    std::vector<double> row_activity(std::span<const double> x) const;
    double objective_value(std::span<const double> x) const;

    /// Largest row or bound violation of x, absolute.
    double max_violation(std::span<const double> x) const;

private:
    void require_open() const;

    std::string name_;
    std::vector<LpColumn> columns_;
    std::vector<LpRow> rows_;
    std::vector<Triplet> triplets_;
    std::vector<std::size_t> col_start_;
    bool finalized_ = false;
};

enum class LpStatus : std::uint8_t { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status) noexcept;

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> x;             // per column
    std::vector<double> duals;         // per row; empty if unavailable
    std::vector<double> reduced_costs; // per column; empty if unavailable
    std::int64_t iterations = 0;
    std::string message;
};

} // namespace gridx
