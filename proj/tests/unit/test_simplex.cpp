#include "doctest.h"

#include "../support/hand_lps.hpp"
#include "../support/vertex_oracle.hpp"

#include "gridx/error.hpp"
#include "gridx/solver.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace gridx;
using namespace gridx::testing;

namespace {

/// Random LP with every column boxed, so the oracle can enumerate vertices.
LpModel random_boxed_lp(std::mt19937_64& rng, int n, int m) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_int_distribution<int> sense(0, 2), coin(0, 2);
    LpModel lp("random");
    for (int j = 0; j < n; ++j) {
        const double lo = std::round(u(rng));
        lp.add_column("x" + std::to_string(j), lo, lo + 1.0 + std::abs(std::round(u(rng))), std::round(u(rng) * 10) / 10);
    }
    for (int i = 0; i < m; ++i) {
        const auto r = lp.add_row("r" + std::to_string(i), static_cast<RowSense>(sense(rng)), std::round(u(rng)));
        for (int j = 0; j < n; ++j)
            if (coin(rng) > 0) lp.add_coefficient(r, j, std::round(u(rng) * 4) / 4);
    }
    lp.finalize();
    return lp;
}

/// Sign conditions and complementary slackness of an optimal solution.
void check_optimality_certificate(const LpModel& lp, const LpSolution& sol, double tol = 1e-6) {
    REQUIRE(sol.duals.size() == lp.num_rows());
    REQUIRE(sol.reduced_costs.size() == lp.num_columns());
    const auto act = lp.row_activity(sol.x);
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const auto& r = lp.rows()[i];
        const double y = sol.duals[i];
        if (r.sense == RowSense::LessEqual) CHECK(y <= tol);
        if (r.sense == RowSense::GreaterEqual) CHECK(y >= -tol);
        if (std::abs(act[i] - r.rhs) > 1e-6) CHECK(std::abs(y) <= tol);
        dual_obj += y * r.rhs;
    }
    for (std::size_t j = 0; j < lp.num_columns(); ++j) {
        const auto& c = lp.columns()[j];
        const double d = sol.reduced_costs[j];
        const bool at_lower = std::abs(sol.x[j] - c.lower) <= 1e-7;
        const bool at_upper = std::abs(sol.x[j] - c.upper) <= 1e-7;
        if (!at_lower && !at_upper) CHECK(std::abs(d) <= tol);
        if (at_lower && !at_upper) CHECK(d >= -tol);
        if (at_upper && !at_lower) CHECK(d <= tol);
        dual_obj += d * sol.x[j];
    }
    CHECK(dual_obj == doctest::Approx(sol.objective).epsilon(1e-7).scale(1.0));
}

} // namespace

TEST_CASE("hand instances") {
    struct Case {
        LpModel lp;
        double optimum;
    };
    for (auto& [lp, optimum] : std::vector<Case>{{single_bus_lp(), 2600.0},
                                                 {two_bus_congested_lp(), 900.0},
                                                 {storage_arbitrage_lp(), 3250.0}}) {
        const auto sol = solve_simplex(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(optimum).epsilon(1e-9));
        CHECK(enumerate_vertices(lp).objective == doctest::Approx(optimum).epsilon(1e-9));
        CHECK(lp.max_violation(sol.x) <= 1e-7);
        check_optimality_certificate(lp, sol);
    }
}

TEST_CASE("two-bus flow saturates the line") {
    const auto lp = two_bus_congested_lp();
    const auto sol = solve_simplex(lp);
    CHECK(sol.x[0] == doctest::Approx(50.0));
    CHECK(sol.x[1] == doctest::Approx(10.0));
    CHECK(sol.x[2] == doctest::Approx(50.0));
    CHECK(sol.x[3] == doctest::Approx(-0.05));
}

TEST_CASE("random boxed LPs agree with vertex enumeration") {
    std::mt19937_64 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 7; // up to 8 columns
        const int m = 1 + trial % 4;
        const auto lp = random_boxed_lp(rng, n, m);
        const auto oracle = enumerate_vertices(lp);
        const auto sol = solve_simplex(lp);
        if (oracle.feasible) {
            ++optimal;
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-6).scale(1.0));
            CHECK(lp.max_violation(sol.x) <= 1e-7);
            check_optimality_certificate(lp, sol);
        } else {
            ++infeasible;
            CHECK(sol.status == LpStatus::Infeasible);
        }
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 5);
}

TEST_CASE("unbounded and infeasible models") {
    SUBCASE("unbounded") {
        LpModel lp;
        const auto x = lp.add_column("x", 0, kInf, -1.0);
        const auto y = lp.add_column("y", 0, kInf, 0.0);
        const auto r = lp.add_row("r", RowSense::LessEqual, 1.0);
        lp.add_coefficient(r, x, 1.0);
        lp.add_coefficient(r, y, -1.0);
        lp.finalize();
        CHECK(solve_simplex(lp).status == LpStatus::Unbounded);
    }
    SUBCASE("infeasible") {
        LpModel lp;
        const auto x = lp.add_column("x", 0, 1, 1.0);
        const auto r = lp.add_row("r", RowSense::GreaterEqual, 2.0);
        lp.add_coefficient(r, x, 1.0);
        lp.finalize();
        CHECK(solve_simplex(lp).status == LpStatus::Infeasible);
    }
    SUBCASE("free column") {
        LpModel lp;
        const auto x = lp.add_column("x", -kInf, kInf, 1.0);
        const auto r = lp.add_row("r", RowSense::GreaterEqual, -3.0);
        lp.add_coefficient(r, x, 1.0);
        lp.finalize();
        const auto sol = solve_simplex(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.x[0] == doctest::Approx(-3.0));
    }
    SUBCASE("rows without columns") {
        LpModel lp;
        lp.add_row("empty", RowSense::Equal, 0.0);
        lp.finalize();
        CHECK(solve_simplex(lp).status == LpStatus::Optimal);
    }
    SUBCASE("unfinalized") {
        LpModel lp;
        CHECK_THROWS_AS(solve_simplex(lp), ModelError);
    }
}

TEST_CASE("iteration limit") {
    SimplexOptions opts;
    opts.max_iterations = 1;
    const auto sol = solve_simplex(storage_arbitrage_lp(), opts);
    CHECK(sol.status == LpStatus::IterationLimit);
}

TEST_CASE("degenerate transportation problem") {
    // 3 supplies x 3 demands, balanced, many ties in cost.
    LpModel lp("transport");
    const double supply[] = {20, 30, 25}, demand[] = {25, 25, 25};
    const double cost[3][3] = {{4, 4, 6}, {4, 4, 4}, {6, 4, 4}};
    for (int s = 0; s < 3; ++s)
        for (int d = 0; d < 3; ++d) lp.add_column("", 0, kInf, cost[s][d]);
    for (int s = 0; s < 3; ++s) {
        const auto r = lp.add_row("", RowSense::Equal, supply[s]);
        for (int d = 0; d < 3; ++d) lp.add_coefficient(r, s * 3 + d, 1.0);
    }
    for (int d = 0; d < 3; ++d) {
        const auto r = lp.add_row("", RowSense::Equal, demand[d]);
        for (int s = 0; s < 3; ++s) lp.add_coefficient(r, s * 3 + d, 1.0);
    }
    lp.finalize();
    const auto sol = solve_simplex(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(300.0));
    check_optimality_certificate(lp, sol);
}

TEST_CASE("external backend") {
    const auto lp = single_bus_lp();
    const auto dir = std::filesystem::temp_directory_path() / "gridx_test_external";
    std::filesystem::create_directories(dir);
    SUBCASE("reads name/value lines") {
        const auto file = dir / "canned.txt";
        std::ofstream(file) << "Objective value: 2600\ng1 60\ng2 40\nnot_a_column 7\n";
        const auto sol = solve_external(lp, "test -s {mps} && cp " + file.string() + " {solution}", dir);
        CHECK(sol.status == LpStatus::Optimal);
        CHECK(sol.x == std::vector<double>{60.0, 40.0, 0.0});
        CHECK(sol.objective == 2600.0);
    }
    SUBCASE("status line") {
        const auto file = dir / "status.txt";
        std::ofstream(file) << "status infeasible\n";
        CHECK(read_solution_file(lp, file).status == LpStatus::Infeasible);
    }
    SUBCASE("failing command") { CHECK_THROWS_AS(solve_external(lp, "false {mps} {solution}", dir), SolverError); }
    SUBCASE("template without placeholders") { CHECK_THROWS_AS(solve_external(lp, "true", dir), SolverError); }
    SUBCASE("dispatch") {
        SolverSettings s;
        CHECK(solve_lp(lp, s).objective == doctest::Approx(2600.0));
        s.backend = "glpk";
        CHECK_THROWS_AS(solve_lp(lp, s), SolverError);
    }
    std::filesystem::remove_all(dir);
}
