#pragma once

// Brute-force LP oracle: enumerate every basic solution of a small bounded LP.
// Each candidate vertex makes n linearly independent constraints tight
// (all equalities plus a subset of inequalities and finite bounds).

#include "gridx/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace gridx::testing {

struct OracleResult {
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
    std::vector<double> x;
};

namespace detail {

struct Halfspace {
    std::vector<double> a;
    double b = 0.0;
    int kind = 0; // -1: a.x <= b, 0: a.x == b, +1: a.x >= b
};

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        }
        if (std::abs(m[p][c]) < 1e-10) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(rhs[p], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

} // namespace detail

/// The model must be finalized and its feasible region bounded.
inline OracleResult enumerate_vertices(const LpModel& model, double tol = 1e-8) {
    using detail::Halfspace;
    const std::size_t n = model.num_columns();
    std::vector<Halfspace> eq, ineq;
    std::vector<std::vector<double>> dense(model.num_rows(), std::vector<double>(n, 0.0));
    for (const auto& t : model.triplets()) dense[static_cast<std::size_t>(t.row)][static_cast<std::size_t>(t.col)] += t.value;
    for (std::size_t i = 0; i < model.num_rows(); ++i) {
        const auto& r = model.rows()[i];
        const int kind = r.sense == RowSense::Equal ? 0 : (r.sense == RowSense::LessEqual ? -1 : 1);
        (kind == 0 ? eq : ineq).push_back({dense[i], r.rhs, kind});
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& c = model.columns()[j];
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        if (c.lower == c.upper) {
            eq.push_back({e, c.lower, 0});
            continue;
        }
        if (std::isfinite(c.lower)) ineq.push_back({e, c.lower, 1});
        if (std::isfinite(c.upper)) ineq.push_back({e, c.upper, -1});
    }

    OracleResult best;
    if (eq.size() > n) {
        // Overdetermined equalities: still enumerate n-subsets of them via the general loop below.
        ineq.insert(ineq.begin(), eq.begin(), eq.end());
        eq.clear();
    }
    const std::size_t need = n - eq.size();
    std::vector<std::size_t> pick(need);
    auto feasible = [&](const std::vector<double>& x) {
        auto check = [&](const Halfspace& h) {
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) ax += h.a[j] * x[j];
            const double scale = tol * (1.0 + std::abs(h.b));
            if (h.kind == 0) return std::abs(ax - h.b) <= scale;
            if (h.kind < 0) return ax <= h.b + scale;
            return ax >= h.b - scale;
        };
        return std::all_of(eq.begin(), eq.end(), check) && std::all_of(ineq.begin(), ineq.end(), check);
    };
    auto evaluate = [&] {
        std::vector<std::vector<double>> m;
        std::vector<double> rhs;
        for (const auto& h : eq) {
            m.push_back(h.a);
            rhs.push_back(h.b);
        }
        for (std::size_t i : pick) {
            m.push_back(ineq[i].a);
            rhs.push_back(ineq[i].b);
        }
        const auto x = detail::solve_square(std::move(m), std::move(rhs));
        if (!x || !feasible(*x)) return;
        double obj = 0.0;
        for (std::size_t j = 0; j < n; ++j) obj += model.columns()[j].cost * (*x)[j];
        if (obj < best.objective) {
            best.feasible = true;
            best.objective = obj;
            best.x = *x;
        }
    };
    if (need > ineq.size()) return best;
    if (need == 0) {
        evaluate();
        return best;
    }
    for (std::size_t i = 0; i < need; ++i) pick[i] = i;
    while (true) {
        evaluate();
        std::size_t i = need;
        while (i > 0 && pick[i - 1] == ineq.size() - need + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t k = i; k < need; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

} // namespace gridx::testing
