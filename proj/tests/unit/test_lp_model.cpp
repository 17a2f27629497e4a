#include "doctest.h"

#include "gridx/error.hpp"
#include "gridx/lp_model.hpp"

#include <cmath>
#include <limits>

using namespace gridx;

TEST_CASE("duplicates are summed") {
    LpModel m;
    const auto c = m.add_column("x", 0, 1);
    const auto r = m.add_row("r", RowSense::LessEqual, 1);
    m.add_coefficient(r, c, 2.0);
    m.add_coefficient(r, c, 3.0);
    m.finalize();
    REQUIRE(m.num_nonzeros() == 1);
    CHECK(m.triplets()[0] == Triplet{r, c, 5.0});
}

TEST_CASE("cancelling duplicates leave no entry") {
    LpModel m;
    const auto c = m.add_column("x", 0, 1);
    const auto r = m.add_row("r", RowSense::LessEqual, 1);
    m.add_coefficient(r, c, 2.0);
    m.add_coefficient(r, c, -2.0);
    m.finalize();
    CHECK(m.num_nonzeros() == 0);
}

TEST_CASE("empty model") {
    LpModel m;
    CHECK_NOTHROW(m.finalize());
    CHECK(m.num_rows() == 0);
    CHECK(m.num_columns() == 0);
}

TEST_CASE("invalid data") {
    SUBCASE("NaN coefficient") {
        LpModel m;
        const auto c = m.add_column("x", 0, 1);
        const auto r = m.add_row("r", RowSense::Equal, 0);
        m.add_coefficient(r, c, std::nan(""));
        CHECK_THROWS_AS(m.finalize(), ModelError);
    }
    SUBCASE("crossed bounds") {
        LpModel m;
        m.add_column("x", 2, 1);
        CHECK_THROWS_AS(m.finalize(), ModelError);
    }
    SUBCASE("infinite cost") {
        LpModel m;
        m.add_column("x", 0, 1, std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(m.finalize(), ModelError);
    }
    SUBCASE("out of range entry") {
        LpModel m;
        m.add_column("x", 0, 1);
        m.add_coefficient(3, 0, 1.0);
        CHECK_THROWS_AS(m.finalize(), ModelError);
    }
}

TEST_CASE("finalized models are immutable") {
    LpModel m;
    m.add_column("x", 0, 1);
    m.finalize();
    CHECK_THROWS_AS(m.add_column("y", 0, 1), ModelError);
    CHECK_THROWS_AS(m.set_cost(0, 1.0), ModelError);
}

TEST_CASE("column-major order and evaluation") {
    LpModel m;
    const auto x = m.add_column("x", 0, 10, 1.0);
    const auto y = m.add_column("", -5, 5, -2.0);
    const auto r0 = m.add_row("a", RowSense::LessEqual, 4);
    const auto r1 = m.add_row("", RowSense::GreaterEqual, -1);
    m.add_coefficient(r1, y, 1.0);
    m.add_coefficient(r0, x, 1.0);
    m.add_coefficient(r1, x, 2.0);
    m.add_coefficient(r0, y, 1.0);
    m.finalize();
    const std::vector<Triplet> expected{{0, 0, 1.0}, {1, 0, 2.0}, {0, 1, 1.0}, {1, 1, 1.0}};
    CHECK(m.triplets() == expected);
    CHECK(m.column_entries(1).size() == 2);
    CHECK(m.column_name(y) == "C1");
    CHECK(m.row_name(r1) == "R1");
    CHECK(m.row_name(r0) == "a");
    const std::vector<double> v{3.0, 2.0};
    CHECK(m.row_activity(v) == std::vector<double>{5.0, 8.0});
    CHECK(m.objective_value(v) == -1.0);
    CHECK(m.max_violation(v) == 1.0);
}
