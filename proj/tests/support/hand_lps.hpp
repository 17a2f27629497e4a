#pragma once

// Small hand-written LPs with known optima, plus the three golden MPS models.

#include "gridx/lp_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gridx::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One bus, demand 100: cheap unit (cap 60, $10), dear unit (cap 100, $50),
/// unserved energy at $5000. Optimum 60*10 + 40*50 = 2600.
inline LpModel single_bus_lp() {
    LpModel m("single_bus");
    const auto g1 = m.add_column("g1", 0, 60, 10);
    const auto g2 = m.add_column("g2", 0, 100, 50);
    const auto u = m.add_column("u", 0, kInf, 5000);
    const auto r = m.add_row("balance", RowSense::Equal, 100);
    m.add_coefficient(r, g1, 1);
    m.add_coefficient(r, g2, 1);
    m.add_coefficient(r, u, 1);
    m.finalize();
    return m;
}

/// Two buses joined by a 50 MW line (X = 0.1 pu, 100 MVA base). Load 60 at
/// bus 2; $10 unit at bus 1, $40 unit (cap 30) at bus 2. Optimum 50*10 + 10*40 = 900.
inline LpModel two_bus_congested_lp() {
    LpModel m("two_bus");
    const double b = 100.0 / 0.1;
    const auto g1 = m.add_column("g1", 0, 200, 10);
    const auto g2 = m.add_column("g2", 0, 30, 40);
    const auto f = m.add_column("f", -kInf, kInf, 0);
    const auto th2 = m.add_column("theta2", -std::numbers::pi, std::numbers::pi, 0);
    const auto u2 = m.add_column("u2", 0, 60, 5000);
    const auto bal1 = m.add_row("bal1", RowSense::Equal, 0);
    m.add_coefficient(bal1, g1, 1);
    m.add_coefficient(bal1, f, -1);
    const auto bal2 = m.add_row("bal2", RowSense::Equal, 60);
    m.add_coefficient(bal2, g2, 1);
    m.add_coefficient(bal2, f, 1);
    m.add_coefficient(bal2, u2, 1);
    // f = b (theta1 - theta2), theta1 = 0
    const auto flow = m.add_row("flow", RowSense::Equal, 0);
    m.add_coefficient(flow, f, 1);
    m.add_coefficient(flow, th2, b);
    const auto lo = m.add_row("cap_lo", RowSense::GreaterEqual, -50);
    m.add_coefficient(lo, f, 1);
    const auto up = m.add_row("cap_up", RowSense::LessEqual, 50);
    m.add_coefficient(up, f, 1);
    m.finalize();
    return m;
}

/// Storage arbitrage over two hours: energy at $10 in hour 1, $100 in hour 2,
/// load 50 each hour, 30 MW / 100 MWh store with sqrt(0.85) each way.
/// Optimum charges 30 MW and discharges 25.5 MW: 10*80 + 100*24.5 = 3250.
inline LpModel storage_arbitrage_lp() {
    LpModel m("arbitrage");
    const double eta = std::sqrt(0.85);
    const auto g1 = m.add_column("g1", 0, 200, 10);
    const auto g2 = m.add_column("g2", 0, 200, 100);
    const auto c1 = m.add_column("charge1", 0, 30, 0);
    const auto d2 = m.add_column("discharge2", 0, 30, 0);
    const auto e1 = m.add_column("e1", 0, 100, 0);
    const auto e2 = m.add_column("e2", 0, 100, 0);
    const auto h1 = m.add_row("bal1", RowSense::Equal, 50);
    m.add_coefficient(h1, g1, 1);
    m.add_coefficient(h1, c1, -1);
    const auto h2 = m.add_row("bal2", RowSense::Equal, 50);
    m.add_coefficient(h2, g2, 1);
    m.add_coefficient(h2, d2, 1);
    const auto s1 = m.add_row("soc1", RowSense::Equal, 0);
    m.add_coefficient(s1, e1, 1);
    m.add_coefficient(s1, c1, -eta);
    const auto s2 = m.add_row("soc2", RowSense::Equal, 0);
    m.add_coefficient(s2, e2, 1);
    m.add_coefficient(s2, e1, -1);
    m.add_coefficient(s2, d2, 1 / eta);
    m.finalize();
    return m;
}

// Golden MPS models --------------------------------------------------------

inline LpModel golden_bounded_min() {
    LpModel m("gridx");
    const auto x = m.add_column("x", 0, 10, 1);
    const auto c = m.add_row("c", RowSense::GreaterEqual, 1);
    m.add_coefficient(c, x, 1);
    m.finalize();
    return m;
}

inline LpModel golden_free_var() {
    LpModel m("free");
    const auto y = m.add_column("y", -kInf, kInf, 1);
    const auto z = m.add_column("z", -1, 3, -1);
    const auto r1 = m.add_row("r1", RowSense::Equal, 2);
    const auto r2 = m.add_row("r2", RowSense::LessEqual, 4);
    m.add_coefficient(r1, y, 1);
    m.add_coefficient(r1, z, 1);
    m.add_coefficient(r2, y, 1);
    m.add_coefficient(r2, z, -2);
    m.finalize();
    return m;
}

/// Generated names, a fixed column, an MI bound, an empty column, duplicate
/// triplets and values that need 17 significant digits.
inline LpModel golden_mixed() {
    LpModel m("mixed");
    const auto c0 = m.add_column("", 2, 2, 0.1);
    const auto c1 = m.add_column("", -kInf, 5, 0);
    m.add_column("", 0, kInf, 0);
    const auto c3 = m.add_column("", 0.5, kInf, -3);
    const auto r0 = m.add_row("", RowSense::GreaterEqual, 0);
    const auto r1 = m.add_row("", RowSense::Equal, -1.5);
    m.add_coefficient(r0, c0, 1);
    m.add_coefficient(r0, c1, 0.5);
    m.add_coefficient(r0, c1, 0.5);
    m.add_coefficient(r1, c1, 1.0 / 3.0);
    m.add_coefficient(r1, c3, 2);
    m.finalize();
    return m;
}

} // namespace gridx::testing
