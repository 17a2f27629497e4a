#include "doctest.h"

#include "gridx/domain.hpp"
#include "gridx/error.hpp"

#include <algorithm>
#include <set>

using namespace gridx;

namespace {

GridTopology path3() {
    GridTopology t;
    t.buses = {{0, 30.0, -97.0, std::nullopt}, {1, 30.5, -97.5, std::nullopt}, {2, 31.0, -98.0, std::nullopt}};
    t.lines = {{0, 1, 0.1, 100.0, 20.0}, {1, 2, 0.1, 100.0, 25.0}};
    t.generators = {{0, TechKind::NaturalGas, 200.0}};
    return t;
}

bool mentions(const ValidationReport& r, std::string_view text) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

} // namespace

TEST_CASE("tech classes") {
    CHECK(is_thermal(TechKind::Nuclear));
    CHECK(is_thermal(TechKind::Coal));
    CHECK(is_thermal(TechKind::NaturalGas));
    CHECK_FALSE(is_thermal(TechKind::Solar));
    CHECK_FALSE(is_thermal(TechKind::Wind));
    CHECK_FALSE(is_thermal(TechKind::Hydro));
    for (TechKind k : kAllTechs) {
        CHECK(parse_tech(to_string(k)) == k);
        CHECK(parse_tech(display_name(k)) == k);
        CHECK(parse_tech(short_code(k)) == k);
    }
    CHECK(parse_tech("NATURAL_GAS") == TechKind::NaturalGas);
    CHECK_FALSE(parse_tech("geothermal").has_value());
    CHECK_THROWS_AS(parse_tech_or_throw("geothermal"), InputError);
}

TEST_CASE("validate_topology") {
    SUBCASE("well-formed path") { CHECK(validate_topology(path3()).ok()); }
    SUBCASE("unknown bus") {
        auto t = path3();
        t.lines.push_back({1, 99, 0.1, 10.0, std::nullopt});
        const auto r = validate_topology(t);
        CHECK_FALSE(r.ok());
        CHECK(mentions(r, "unknown bus"));
    }
    SUBCASE("duplicate generator") {
        auto t = path3();
        t.generators = {{1, TechKind::NaturalGas, 50.0}, {1, TechKind::NaturalGas, 60.0}};
        CHECK(mentions(validate_topology(t), "duplicate (bus,tech)"));
    }
    SUBCASE("nonpositive reactance") {
        auto t = path3();
        t.lines[0].reactance_pu = 0.0;
        CHECK(mentions(validate_topology(t), "reactance"));
    }
    SUBCASE("disconnected bus") {
        auto t = path3();
        t.lines.pop_back();
        CHECK_FALSE(validate_topology(t).ok());
    }
    SUBCASE("coordinates out of range") {
        auto t = path3();
        t.buses[1].latitude = 91.0;
        CHECK_FALSE(validate_topology(t).ok());
    }
    SUBCASE("sparse ids") {
        auto t = path3();
        t.buses[2].id = 5;
        CHECK_FALSE(validate_topology(t).ok());
    }
}

TEST_CASE("aggregate_raw_grid") {
    const std::vector<Bus> buses{{0, 30, -97, std::nullopt},
                                 {1, 30, -96, std::nullopt},
                                 {2, 30, -95, std::nullopt},
                                 {3, 30, -94, std::nullopt}};
    SUBCASE("parallel generators sum") {
        const std::vector<Generator> gens{{3, TechKind::NaturalGas, 50.0}, {3, TechKind::NaturalGas, 50.0}};
        const auto t = aggregate_raw_grid(buses, gens, {});
        REQUIRE(t.generators.size() == 1);
        CHECK(t.generators[0].initial_capacity_mw == 100.0);
    }
    SUBCASE("parallel lines combine") {
        const std::vector<Line> lines{{0, 1, 0.1, 300.0, std::nullopt}, {1, 0, 0.1, 200.0, std::nullopt}};
        const auto t = aggregate_raw_grid(buses, {}, lines);
        REQUIRE(t.lines.size() == 1);
        CHECK(t.lines[0].from == 0);
        CHECK(t.lines[0].to == 1);
        CHECK(t.lines[0].initial_capacity_mw == 500.0);
        CHECK(t.lines[0].reactance_pu == doctest::Approx(1.0 / (1.0 / 0.1 + 1.0 / 0.1)).epsilon(1e-15));
    }
    SUBCASE("single line unchanged") {
        const std::vector<Line> lines{{1, 2, 0.07, 80.0, 12.0}};
        const auto t = aggregate_raw_grid(buses, {}, lines);
        REQUIRE(t.lines.size() == 1);
        CHECK(t.lines[0] == lines[0]);
    }
    SUBCASE("mixed reactance signs") {
        const std::vector<Line> lines{{0, 1, 0.1, 10.0, std::nullopt}, {0, 1, -0.2, 10.0, std::nullopt}};
        CHECK_THROWS_AS(aggregate_raw_grid(buses, {}, lines), InputError);
    }
    SUBCASE("idempotent and conserves MW per tech") {
        const std::vector<Generator> gens{{0, TechKind::Solar, 10.0},     {2, TechKind::Wind, 5.0},
                                          {0, TechKind::Solar, 2.5},      {1, TechKind::Coal, 300.0},
                                          {2, TechKind::Wind, 7.25},      {1, TechKind::NaturalGas, 1.0}};
        const std::vector<Line> lines{{0, 1, 0.1, 10.0, std::nullopt}, {2, 1, 0.3, 20.0, std::nullopt},
                                      {1, 2, 0.15, 5.0, std::nullopt}, {2, 3, 0.2, 1.0, std::nullopt}};
        const auto once = aggregate_raw_grid(buses, gens, lines);
        const auto twice = aggregate_raw_grid(once.buses, once.generators, once.lines);
        CHECK(once == twice);
        CHECK(once.generators.size() <= gens.size());
        for (TechKind k : kAllTechs) {
            double raw = 0.0, merged = 0.0;
            for (const auto& g : gens) raw += g.tech == k ? g.initial_capacity_mw : 0.0;
            for (const auto& g : once.generators) merged += g.tech == k ? g.initial_capacity_mw : 0.0;
            CHECK(raw == merged);
        }
    }
}

TEST_CASE("horizon") {
    const Horizon h({2025, 2026, 2027});
    CHECK(h.size() == 3);
    CHECK(h.index_of(2026) == std::size_t{1});
    CHECK_FALSE(h.index_of(2030).has_value());
    CHECK_THROWS_AS(Horizon({2025, 2027}), InputError);
}

TEST_CASE("economics") {
    EconParams e;
    e.interest_rate = 0.05;
    e.base_year = 2025;
    CHECK(e.discount_factor(2025) == 1.0);
    CHECK(e.discount_factor(2027) == doctest::Approx(1.0 / (1.05 * 1.05)).epsilon(1e-15));
    CHECK_THROWS_AS(e.trans_capex(2025), InputError);
    e.trans_capex_per_mw_mile[2025] = 1200.0;
    CHECK(e.trans_capex(2025) == 1200.0);

    TechYearCosts c{0, 0, 2.0, 3.0, 7.5};
    CHECK(c.variable_cost_per_mwh() == 2.0 + 3.0 * 7.5);

    StorageParams s;
    CHECK(s.round_trip_efficiency() == doctest::Approx(0.85).epsilon(1e-15));
    CHECK(s.duration_hours == 4.0);
}

TEST_CASE("share validation") {
    CHECK_NOTHROW(validate_shares({{"A", 0.25}, {"B", 0.75}}, "psi_c"));
    CHECK_THROWS_WITH_AS(validate_shares({{"A", 0.6}, {"B", 0.5}}, "psi_c"), doctest::Contains("sum 1.1"), InputError);
    CHECK_THROWS_AS(validate_shares({{"A", -0.5}, {"B", 1.5}}, "psi_c"), InputError);
}

TEST_CASE("scenario validation") {
    ScenarioConfig s;
    s.horizon = Horizon({2025, 2026});
    s.demand.base_energy_twh = {1, 2};
    s.demand.dc_peak_gw = {0, 0};
    s.demand.electrification = {0, 0.05};
    s.demand.base_peak_gw = {1, 1};
    for (int y : {2025, 2026}) {
        s.storage.costs_by_year[y] = {1.0, 1.0};
        s.econ.trans_capex_per_mw_mile[y] = 1.0;
    }
    CHECK_NOTHROW(validate_scenario(s));
    SUBCASE("phi must not decrease") {
        s.demand.electrification = {0.1, 0.05};
        CHECK_THROWS_AS(validate_scenario(s), InputError);
    }
    SUBCASE("series length") {
        s.demand.dc_peak_gw = {0};
        CHECK_THROWS_AS(validate_scenario(s), InputError);
    }
    SUBCASE("thermal limits") {
        TechCatalogEntry e;
        e.kind = TechKind::Coal;
        e.f_min = 0.6;
        e.f_max = 0.5;
        s.techs.set(e);
        CHECK_THROWS_AS(validate_scenario(s), InputError);
    }
}

TEST_CASE("parameter table binds every symbol once") {
    const auto table = parameter_table();
    std::set<std::string_view> symbols;
    for (const auto& row : table) {
        CHECK_MESSAGE(symbols.insert(row.symbol).second, row.symbol);
        CHECK_FALSE(row.owner.empty());
        CHECK_FALSE(row.field.empty());
    }
    // Symbols of the optimization model and its demand inputs.
    for (std::string_view s : {"c_gen_0", "c_trans_0", "c_stor_0", "X", "L", "alpha_gen", "beta_gen", "gamma_gen",
                               "gamma_fuel", "HR", "omega_gen", "F_min", "F_max", "R_ramp", "alpha_stor", "beta_stor",
                               "omega_stor", "H_stor", "eta_charge", "eta_disch", "Ir", "delta", "zeta", "S_base",
                               "omega_trans", "alpha_trans", "E_base_t", "P_DC_t", "LF_DC", "psi_c", "Q_M", "phi_t",
                               "eta_elec", "psi_e", "P_base_peak_t", "D_base", "D_DC", "D_EM", "P_peak", "F_RN",
                               "w_d"}) {
        CHECK_MESSAGE(symbols.contains(s), s);
    }
}
