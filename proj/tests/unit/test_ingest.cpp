#include "doctest.h"

#include "gridx/csv.hpp"
#include "gridx/error.hpp"
#include "gridx/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gridx;
namespace fs = std::filesystem;

namespace {

const fs::path kToy = fs::path(GRIDX_SOURCE_DIR) / "data/toy";

// Per-year cost block for 2025..2031.
std::string per_year(const std::string& costs) {
    std::string s;
    for (int y = 2025; y <= 2031; ++y) s += "\"" + std::to_string(y) + "\": " + costs + (y < 2031 ? ", " : "");
    return s;
}

// Seven-year scenario in $/kW with shares given inline.
std::string seven_year_json(const std::string& demand_extra = R"("LF_DC": 0.9,)",
                            const std::string& psi_dc = R"({"A": 0.6, "B": 0.4})") {
    return R"({
  "horizon": {"start": 2025, "end": 2031},
  "econ": {"interest_rate": 0.05, "base_year": 2025, "trans_capex": 930},
  "storage": {"lead_time": 1, )" + per_year(R"({"capex": 1200, "fom": 30})") + R"(},
  "tech": {
    "natural_gas": {"lead_time": 3, "f_min": 0.2, "f_max": 0.9, "ramp": 0.6,
                    )" + per_year(R"({"capex": 1100, "fom": 20, "vom": 2, "fuel": 3.5, "heat_rate": 7.2})") + R"(},
    "nuclear": {"lead_time": 6, "earliest_build_year": 2029, )" + per_year(R"({"capex": 7000, "fom": 120})") + R"(}
  },
  "demand": {
    "E_base": [485.90, 538.94, 595.63, 685.31, 747.59, 808.97, 846.99],
    "P_DC": [0, 2.43, 6.66, 13.90, 18.00, 22.18, 24.20],
    )" + demand_extra + R"(
    "Q_M": 18.97,
    "phi": [0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30],
    "P_base_peak": [85.76, 92.22, 97.63, 107.64, 110.86, 116.77, 120.33],
    "psi_dc": )" + psi_dc + R"(,
    "psi_em": {"A": 1.0}
  },
  "clustering": {"k": 5, "seed": 7, "restarts": 3}
})";
}

std::string hourly_csv(std::size_t rows, const std::string& header, const std::string& value) {
    std::string s = header + "\n";
    for (std::size_t h = 0; h < rows; ++h) s += std::to_string(h) + "," + value + "\n";
    return s;
}

} // namespace

TEST_CASE("scenario with seven years") {
    const auto s = parse_scenario(seven_year_json(), kToy);
    CHECK(s.horizon.size() == 7);
    CHECK(s.horizon.year(0) == 2025);
    CHECK(s.horizon.year(6) == 2031);
    CHECK(s.demand.dc_load_factor == 0.9);
    const auto& ng = s.techs.at(TechKind::NaturalGas);
    CHECK(ng.lead_time_years == 3);
    CHECK(ng.costs(2027).capex_per_mw == 1.1e6);
    CHECK(ng.costs(2027).fom_per_mw_year == 2.0e4);
    CHECK(ng.costs(2027).variable_cost_per_mwh() == doctest::Approx(2 + 3.5 * 7.2));
    CHECK(s.techs.at(TechKind::Nuclear).earliest_build_year == 2029);
    CHECK(s.storage.costs(2031).capex_per_mw == 1.2e6);
    CHECK(s.econ.trans_capex(2030) == 930.0);
    CHECK(s.econ.transmission_lead_time_years == 3);
}

TEST_CASE("LF_DC defaults to 0.9") {
    const auto s = parse_scenario(seven_year_json(""), kToy);
    CHECK(s.demand.dc_load_factor == 0.9);
}

TEST_CASE("region weights must sum to one") {
    CHECK_THROWS_WITH_AS(parse_scenario(seven_year_json(R"("LF_DC": 0.9,)", R"({"A": 0.6, "B": 0.5})"), kToy),
                         doctest::Contains("region weights sum 1.1"), InputError);
}

TEST_CASE("scenario errors") {
    CHECK_THROWS_AS(parse_scenario("not json", kToy), InputError);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"horizon": [2025]})", kToy), doctest::Contains("missing required key"),
                         InputError);
    auto text = seven_year_json();
    const auto pos = text.find("[0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30]");
    text.replace(pos, 40, "[0, 0.05]");
    CHECK_THROWS_AS(parse_scenario(text, kToy), InputError);
}

TEST_CASE("scenario serialization round-trips") {
    const auto s = parse_scenario(seven_year_json(), kToy);
    const auto again = parse_scenario(serialize_scenario(s), kToy);
    CHECK(again.horizon == s.horizon);
    CHECK(again.econ == s.econ);
    CHECK(again.storage == s.storage);
    CHECK(again.techs == s.techs);
    CHECK(again.demand == s.demand);
    CHECK(again.clustering == s.clustering);
    CHECK(again.solver == s.solver);
    CHECK(again.planner == s.planner);
    CHECK(serialize_scenario(again) == serialize_scenario(s));
}

TEST_CASE("toy fixture loads") {
    const auto s = load_scenario(kToy / "scenario.json");
    const auto again = load_scenario(kToy / "scenario.json");
    CHECK(s == again);
    const auto topo = load_topology(s.data_dir);
    CHECK(topo.num_buses() == 3);
    CHECK(validate_topology(topo).ok());
    const auto profiles = load_profiles(s.data_dir, topo.num_buses());
    CHECK(profiles.base_load.size() == 3);
    for (const auto& series : profiles.base_load.values) CHECK(series.size() == std::size_t(kHoursPerYear));
    CHECK(profiles.cf_solar.entities == std::vector<BusId>{1});
    CHECK(profiles.cf_wind.entities == std::vector<BusId>{2});
    CHECK(s.demand.em_shares.at("Williamson") == 0.5);
}

TEST_CASE("profile matrices") {
    SUBCASE("three buses") {
        const auto m = parse_profile_matrix(hourly_csv(kHoursPerYear, "hour,0,1,2", "1,2,3"), 3,
                                            ProfileUnit::Megawatts, "load");
        CHECK(m.entities == std::vector<BusId>{0, 1, 2});
        CHECK(m.find(1)->at(100) == 2.0);
        CHECK(m.find(7) == nullptr);
    }
    SUBCASE("capacity factor out of range") {
        CHECK_THROWS_WITH_AS(
            parse_profile_matrix(hourly_csv(kHoursPerYear, "hour,0", "1.3"), 1, ProfileUnit::CapacityFactor, "cf"),
            doctest::Contains("capacity factor out of range"), InputError);
    }
    SUBCASE("rounding slack is clamped") {
        const auto m =
            parse_profile_matrix(hourly_csv(kHoursPerYear, "hour,0", "1.00005"), 1, ProfileUnit::CapacityFactor, "cf");
        CHECK(m.values[0][0] == 1.0);
    }
    SUBCASE("missing hour") {
        CHECK_THROWS_WITH_AS(
            parse_profile_matrix(hourly_csv(kHoursPerYear - 1, "hour,0", "1"), 1, ProfileUnit::Megawatts, "load"),
            doctest::Contains("expected 8760 values, got 8759"), InputError);
    }
    SUBCASE("unknown bus") {
        CHECK_THROWS_AS(
            parse_profile_matrix(hourly_csv(kHoursPerYear, "hour,4", "1"), 3, ProfileUnit::Megawatts, "load"),
            InputError);
    }
}

TEST_CASE("csv helpers") {
    const auto t = csv::parse("a, b\n# comment\n\n1, 2\n");
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][1] == "2");
    CHECK(t.line_numbers[0] == 4);
    CHECK_THROWS_AS(csv::parse("a,b\n1\n"), InputError);
    CHECK_THROWS_AS(csv::to_double("x", "ctx"), InputError);
    CHECK_THROWS_AS(csv::to_double("nan", "ctx"), InputError);
    CHECK(csv::to_integer("-12", "ctx") == -12);
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
        CHECK(csv::to_double(csv::format_number(v), "ctx") == v);
    }
}
