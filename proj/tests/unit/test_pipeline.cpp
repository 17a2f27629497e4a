#include "doctest.h"

#include "gridx/error.hpp"
#include "gridx/mps.hpp"
#include "gridx/pipeline.hpp"
#include "gridx/report.hpp"

#include <filesystem>

using namespace gridx;

namespace {

const std::filesystem::path kScenario = std::filesystem::path(GRIDX_SOURCE_DIR) / "data/toy/scenario.json";

} // namespace

TEST_CASE("regions on the toy grid") {
    const auto s = load_scenario(kScenario);
    const auto topo = load_topology(s.data_dir);
    const auto r = setup_regions(s, topo);
    CHECK(r.map.bus_region == std::vector<RegionId>{"Travis", "Harris", "Nolan"});
    // Williamson has no bus; its share goes to the nearest bus-bearing county.
    CHECK(r.em.moved.at("Williamson") == "Travis");
    CHECK(r.em.shares.at("Travis") == doctest::Approx(0.5));
    CHECK(r.em.shares.at("Harris") == doctest::Approx(0.5));
    CHECK(r.dc.moved.empty());
    CHECK(r.dc.shares == s.demand.dc_shares);
}

TEST_CASE("initial base energy") {
    auto s = load_scenario(kScenario);
    const auto in = load_inputs(s);
    double mwh = 0.0;
    for (const auto& series : in.profiles.base_load.values)
        for (double v : series) mwh += v;
    CHECK(initial_base_energy_twh(s, in.profiles) == doctest::Approx(mwh / 1e6).epsilon(1e-12));
    s.demand.base_energy_t0_twh = 2.5;
    CHECK(initial_base_energy_twh(s, in.profiles) == 2.5);
}

TEST_CASE("prepared problem") {
    const auto s = load_scenario(kScenario);
    const auto a = prepare_problem(s);
    const auto b = prepare_problem(s, load_inputs(s));
    CHECK(a.days == b.days);
    CHECK(a.demand == b.demand);
    CHECK(a.days.k == 2);
    CHECK(a.days.total_weight() == 365);
    CHECK(a.demand.num_years == 2);
    CHECK(a.demand.em_regions == std::vector<RegionId>{"Harris", "Travis"});
    // Base energy of each year matches the scenario series.
    for (std::size_t t = 0; t < 2; ++t)
        CHECK(a.demand.base_energy_mwh(t) / 1e6 == doctest::Approx(s.demand.base_energy_twh[t]).epsilon(1e-9));
    CHECK(to_mps_string(build_model(a).lp) == to_mps_string(build_model(b).lp));
}

TEST_CASE("toy plan solves") {
    const auto s = load_scenario(kScenario);
    const auto p = prepare_problem(s);
    const auto plan = build_and_solve(p);
    REQUIRE(plan.solution.status == LpStatus::Optimal);
    CHECK(plan.model.lp.max_violation(plan.solution.x) <= 1e-7);
    const auto sol = extract_solution(plan.model, p, plan.solution);
    CHECK(total_discounted_cost(sol) == doctest::Approx(plan.solution.objective).epsilon(1e-9));
    for (double r : energy_balance_residual(sol)) CHECK(r <= 1e-7);
    // Peak adequacy holds in every year.
    for (std::size_t t = 0; t < 2; ++t) {
        double cap = 0.0;
        for (const auto& g : sol.generators) cap += g.available_mw[t];
        CHECK(cap >= p.demand.peak[t] - 1e-6);
    }
}

TEST_CASE("missing data directory") {
    auto s = load_scenario(kScenario);
    s.data_dir = std::filesystem::path(GRIDX_SOURCE_DIR) / "data/does_not_exist";
    CHECK_THROWS_AS(prepare_problem(s), InputError);
}
