#include "gridx/error.hpp"
#include "gridx/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-9;
constexpr double kDropTolerance = 1e-13;
constexpr int kDegenerateLimit = 50;

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

double pow2_round(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        return 1.0;
    }
    return std::exp2(std::clamp(std::round(std::log2(v)), -40.0, 40.0));
}

// Product-form update: B_new = B_old * E where E is the identity with column
// r replaced by the entering column's representation d.
struct Eta {
    int r = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
};

class Simplex {
public:
    Simplex(const LpModel& model, const SimplexOptions& options) : model_(model), opt_(options) {
        m_ = static_cast<int>(model.num_rows());
        n_ = static_cast<int>(model.num_columns());
        total_ = n_ + m_;
        load();
    }

    LpSolution run();

private:
    void load();
    void compute_scaling();

    template <typename F>
    void for_each_entry(int j, F&& f) const {
        if (j < n_) {
            for (std::size_t k = cstart_[static_cast<std::size_t>(j)]; k < cstart_[static_cast<std::size_t>(j) + 1]; ++k) {
                f(rind_[k], aval_[k]);
            }
        } else {
            f(j - n_, -1.0);
        }
    }

    double dot_column(const Eigen::VectorXd& y, int j) const {
        double s = 0.0;
        for_each_entry(j, [&](int i, double a) { s += y[i] * a; });
        return s;
    }

    void refactor();
    Eigen::VectorXd ftran(int j) const;
    Eigen::VectorXd btran(Eigen::VectorXd c) const;
    void recompute_basics();

    LpSolution finish(LpStatus status, std::int64_t iterations, std::string message);

    const LpModel& model_;
    SimplexOptions opt_;
    int m_ = 0;
    int n_ = 0;
    int total_ = 0;
    double ftol_ = 1e-7;
    double otol_ = 1e-7;

    std::vector<std::size_t> cstart_;
    std::vector<int> rind_;
    std::vector<double> aval_;
    std::vector<double> lb_, ub_, cost_;
    std::vector<double> row_scale_, col_scale_;
    double obj_scale_ = 1.0;

    std::vector<double> x_;
    std::vector<VarState> state_;
    std::vector<int> head_;

    mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_; // transpose() is non-const
    std::vector<Eta> etas_;
};

void Simplex::load() {
    ftol_ = opt_.feasibility_tolerance;
    otol_ = opt_.optimality_tolerance;

    cstart_.assign(static_cast<std::size_t>(n_) + 1, 0);
    rind_.reserve(model_.num_nonzeros());
    aval_.reserve(model_.num_nonzeros());
    for (int j = 0; j < n_; ++j) {
        for (const auto& t : model_.column_entries(j)) {
            rind_.push_back(t.row);
            aval_.push_back(t.value);
        }
        cstart_[static_cast<std::size_t>(j) + 1] = rind_.size();
    }

    row_scale_.assign(static_cast<std::size_t>(m_), 1.0);
    col_scale_.assign(static_cast<std::size_t>(n_), 1.0);
    if (opt_.scale) {
        compute_scaling();
    }

    lb_.resize(static_cast<std::size_t>(total_));
    ub_.resize(static_cast<std::size_t>(total_));
    cost_.assign(static_cast<std::size_t>(total_), 0.0);
    for (int j = 0; j < n_; ++j) {
        const auto& c = model_.column(j);
        const double s = col_scale_[static_cast<std::size_t>(j)];
        lb_[static_cast<std::size_t>(j)] = c.lower / s;
        ub_[static_cast<std::size_t>(j)] = c.upper / s;
        cost_[static_cast<std::size_t>(j)] = c.cost * s * obj_scale_;
    }
    for (int i = 0; i < m_; ++i) {
        const auto& r = model_.row(i);
        const double b = r.rhs * row_scale_[static_cast<std::size_t>(i)];
        const auto j = static_cast<std::size_t>(n_ + i);
        switch (r.sense) {
        case RowSense::LessEqual: lb_[j] = -kInf; ub_[j] = b; break;
        case RowSense::GreaterEqual: lb_[j] = b; ub_[j] = kInf; break;
        case RowSense::Equal: lb_[j] = b; ub_[j] = b; break;
        }
    }
}

void Simplex::compute_scaling() {
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> rmin(static_cast<std::size_t>(m_), kInf), rmax(static_cast<std::size_t>(m_), 0.0);
        for (int j = 0; j < n_; ++j) {
            for (std::size_t k = cstart_[static_cast<std::size_t>(j)]; k < cstart_[static_cast<std::size_t>(j) + 1]; ++k) {
                const double a = std::abs(aval_[k]) * row_scale_[static_cast<std::size_t>(rind_[k])] *
                                 col_scale_[static_cast<std::size_t>(j)];
                auto r = static_cast<std::size_t>(rind_[k]);
                rmin[r] = std::min(rmin[r], a);
                rmax[r] = std::max(rmax[r], a);
            }
        }
        for (std::size_t i = 0; i < rmin.size(); ++i) {
            if (rmax[i] > 0.0) row_scale_[i] *= pow2_round(1.0 / std::sqrt(rmin[i] * rmax[i]));
        }
        for (int j = 0; j < n_; ++j) {
            double cmin = kInf, cmax = 0.0;
            for (std::size_t k = cstart_[static_cast<std::size_t>(j)]; k < cstart_[static_cast<std::size_t>(j) + 1]; ++k) {
                const double a = std::abs(aval_[k]) * row_scale_[static_cast<std::size_t>(rind_[k])];
                cmin = std::min(cmin, a);
                cmax = std::max(cmax, a);
            }
            col_scale_[static_cast<std::size_t>(j)] = cmax > 0.0 ? pow2_round(1.0 / std::sqrt(cmin * cmax)) : 1.0;
        }
    }
    for (int j = 0; j < n_; ++j) {
        for (std::size_t k = cstart_[static_cast<std::size_t>(j)]; k < cstart_[static_cast<std::size_t>(j) + 1]; ++k) {
            aval_[k] *= row_scale_[static_cast<std::size_t>(rind_[k])] * col_scale_[static_cast<std::size_t>(j)];
        }
    }
    double cmin = kInf, cmax = 0.0;
    for (int j = 0; j < n_; ++j) {
        const double c = std::abs(model_.column(j).cost) * col_scale_[static_cast<std::size_t>(j)];
        if (c > 0.0) {
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
    }
    obj_scale_ = cmax > 0.0 ? pow2_round(1.0 / std::sqrt(cmin * cmax)) : 1.0;
}

void Simplex::refactor() {
    etas_.clear();
    if (m_ == 0) {
        return;
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m_) * 4);
    for (int r = 0; r < m_; ++r) {
        for_each_entry(head_[static_cast<std::size_t>(r)], [&](int i, double a) { trip.emplace_back(i, r, a); });
    }
    Eigen::SparseMatrix<double> b(m_, m_);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu_.compute(b);
    if (lu_.info() != Eigen::Success) {
        throw SolverError(fmt::format("basis matrix is singular after refactorization ({})", lu_.lastErrorMessage()));
    }
    recompute_basics();
}

void Simplex::recompute_basics() {
    if (m_ == 0) {
        return;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < total_; ++j) {
        if (state_[static_cast<std::size_t>(j)] == VarState::Basic) continue;
        const double v = x_[static_cast<std::size_t>(j)];
        if (v != 0.0) {
            for_each_entry(j, [&](int i, double a) { rhs[i] -= a * v; });
        }
    }
    Eigen::VectorXd xb = lu_.solve(rhs);
    for (int r = 0; r < m_; ++r) {
        x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] = xb[r];
    }
}

Eigen::VectorXd Simplex::ftran(int j) const {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for_each_entry(j, [&](int i, double a) { rhs[i] += a; });
    Eigen::VectorXd v = lu_.solve(rhs);
    for (const auto& e : etas_) {
        const double vr = v[e.r] / e.pivot;
        v[e.r] = vr;
        if (vr != 0.0) {
            for (std::size_t k = 0; k < e.index.size(); ++k) {
                v[e.index[k]] -= e.value[k] * vr;
            }
        }
    }
    return v;
}

Eigen::VectorXd Simplex::btran(Eigen::VectorXd c) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        double s = c[it->r];
        for (std::size_t k = 0; k < it->index.size(); ++k) {
            s -= it->value[k] * c[it->index[k]];
        }
        c[it->r] = s / it->pivot;
    }
    return lu_.transpose().solve(c);
}

LpSolution Simplex::run() {
    x_.assign(static_cast<std::size_t>(total_), 0.0);
    state_.assign(static_cast<std::size_t>(total_), VarState::AtLower);
    for (int j = 0; j < n_; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (std::isfinite(lb_[u])) {
            state_[u] = VarState::AtLower;
            x_[u] = lb_[u];
        } else if (std::isfinite(ub_[u])) {
            state_[u] = VarState::AtUpper;
            x_[u] = ub_[u];
        } else {
            state_[u] = VarState::FreeZero;
            x_[u] = 0.0;
        }
    }
    head_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
        head_[static_cast<std::size_t>(i)] = n_ + i;
        state_[static_cast<std::size_t>(n_ + i)] = VarState::Basic;
    }
    refactor();

    const std::int64_t max_iter = opt_.max_iterations.value_or(10 * static_cast<std::int64_t>(m_ + n_));
    std::int64_t iter = 0;
    int degenerate_run = 0;
    bool fresh = true; // x_B recomputed and no etas since

    Eigen::VectorXd cb(m_);
    while (true) {
        bool phase1 = false;
        for (int r = 0; r < m_; ++r) {
            const int j = head_[static_cast<std::size_t>(r)];
            const double v = x_[static_cast<std::size_t>(j)];
            if (v < lb_[static_cast<std::size_t>(j)] - ftol_) {
                cb[r] = -1.0;
                phase1 = true;
            } else if (v > ub_[static_cast<std::size_t>(j)] + ftol_) {
                cb[r] = 1.0;
                phase1 = true;
            } else {
                cb[r] = 0.0;
            }
        }
        if (!phase1) {
            for (int r = 0; r < m_; ++r) {
                cb[r] = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])];
            }
        }
        const Eigen::VectorXd y = m_ > 0 ? btran(cb) : Eigen::VectorXd();

        // Pricing.
        const bool bland = degenerate_run >= kDegenerateLimit;
        int q = -1;
        int dir = 0;
        double best = 0.0;
        for (int j = 0; j < total_; ++j) {
            const auto u = static_cast<std::size_t>(j);
            const VarState s = state_[u];
            if (s == VarState::Basic || lb_[u] == ub_[u]) continue;
            const double dj = (phase1 ? 0.0 : cost_[u]) - (m_ > 0 ? dot_column(y, j) : 0.0);
            int d = 0;
            if (s == VarState::AtLower && dj < -otol_) d = 1;
            else if (s == VarState::AtUpper && dj > otol_) d = -1;
            else if (s == VarState::FreeZero && std::abs(dj) > otol_) d = dj < 0 ? 1 : -1;
            if (d == 0) continue;
            if (bland) {
                q = j;
                dir = d;
                break;
            }
            if (std::abs(dj) > best) {
                best = std::abs(dj);
                q = j;
                dir = d;
            }
        }

        if (q < 0) {
            if (!fresh) {
                refactor();
                fresh = true;
                continue;
            }
            return finish(phase1 ? LpStatus::Infeasible : LpStatus::Optimal, iter,
                          phase1 ? "no improving direction reduces the infeasibility" : "");
        }
        if (iter >= max_iter) {
            return finish(LpStatus::IterationLimit, iter, fmt::format("stopped after {} iterations", iter));
        }
        ++iter;

        const Eigen::VectorXd alpha = m_ > 0 ? ftran(q) : Eigen::VectorXd();
        const auto uq = static_cast<std::size_t>(q);
        const double range = ub_[uq] - lb_[uq]; // inf for free or one-sided

        // Ratio test. g_i > 0 means basic i decreases as the entering variable moves.
        int leave = -1;
        double theta = kInf;
        bool leave_at_upper = false;
        if (!bland) {
            double theta_max = kInf;
            for (int r = 0; r < m_; ++r) {
                const double g = dir * alpha[r];
                if (std::abs(g) <= kPivotTolerance) continue;
                const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
                const double v = x_[j];
                double t = kInf;
                if (g > 0) {
                    if (v > ub_[j] + ftol_) t = (v - ub_[j] + ftol_) / g;
                    else if (v >= lb_[j] - ftol_ && std::isfinite(lb_[j])) t = (v - lb_[j] + ftol_) / g;
                } else {
                    if (v < lb_[j] - ftol_) t = (lb_[j] - v + ftol_) / -g;
                    else if (v <= ub_[j] + ftol_ && std::isfinite(ub_[j])) t = (ub_[j] - v + ftol_) / -g;
                }
                theta_max = std::min(theta_max, t);
            }
            if (range <= theta_max) {
                theta = range;
            } else if (std::isfinite(theta_max)) {
                double best_g = 0.0;
                for (int r = 0; r < m_; ++r) {
                    const double g = dir * alpha[r];
                    if (std::abs(g) <= kPivotTolerance) continue;
                    const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
                    const double v = x_[j];
                    double t = kInf;
                    bool upper = false;
                    if (g > 0) {
                        if (v > ub_[j] + ftol_) { t = (v - ub_[j]) / g; upper = true; }
                        else if (v >= lb_[j] - ftol_ && std::isfinite(lb_[j])) t = (v - lb_[j]) / g;
                    } else {
                        if (v < lb_[j] - ftol_) t = (lb_[j] - v) / -g;
                        else if (v <= ub_[j] + ftol_ && std::isfinite(ub_[j])) { t = (ub_[j] - v) / -g; upper = true; }
                    }
                    if (t <= theta_max && std::abs(g) > best_g) {
                        best_g = std::abs(g);
                        leave = r;
                        theta = std::max(t, 0.0);
                        leave_at_upper = upper;
                    }
                }
            }
        } else {
            for (int r = 0; r < m_; ++r) {
                const double g = dir * alpha[r];
                if (std::abs(g) <= kPivotTolerance) continue;
                const auto j = static_cast<std::size_t>(head_[static_cast<std::size_t>(r)]);
                const double v = x_[j];
                double t = kInf;
                bool upper = false;
                if (g > 0) {
                    if (v > ub_[j] + ftol_) { t = (v - ub_[j]) / g; upper = true; }
                    else if (v >= lb_[j] - ftol_ && std::isfinite(lb_[j])) t = (v - lb_[j]) / g;
                } else {
                    if (v < lb_[j] - ftol_) t = (lb_[j] - v) / -g;
                    else if (v <= ub_[j] + ftol_ && std::isfinite(ub_[j])) { t = (ub_[j] - v) / -g; upper = true; }
                }
                t = std::max(t, 0.0);
                if (t < theta - 1e-12 ||
                    (std::abs(t - theta) <= 1e-12 && leave >= 0 &&
                     head_[static_cast<std::size_t>(r)] < head_[static_cast<std::size_t>(leave)])) {
                    theta = t;
                    leave = r;
                    leave_at_upper = upper;
                }
            }
            if (range <= theta) {
                leave = -1;
                theta = range;
            }
        }

        if (leave < 0 && !std::isfinite(theta)) {
            if (phase1) {
                throw SolverError("phase one found an unbounded improving ray");
            }
            return finish(LpStatus::Unbounded, iter, fmt::format("column {} improves without limit",
                                                                 q < n_ ? model_.column_name(q)
                                                                        : model_.row_name(q - n_)));
        }

        degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;

        if (theta != 0.0) {
            x_[uq] += dir * theta;
            for (int r = 0; r < m_; ++r) {
                if (alpha[r] != 0.0) {
                    x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] -= theta * dir * alpha[r];
                }
            }
        }
        if (leave < 0) {
            state_[uq] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
            x_[uq] = dir > 0 ? ub_[uq] : lb_[uq];
            continue;
        }

        const auto ul = static_cast<std::size_t>(head_[static_cast<std::size_t>(leave)]);
        if (leave_at_upper) {
            state_[ul] = VarState::AtUpper;
            x_[ul] = ub_[ul];
        } else {
            state_[ul] = VarState::AtLower;
            x_[ul] = lb_[ul];
        }
        if (lb_[ul] == ub_[ul]) {
            state_[ul] = VarState::AtLower;
        }
        state_[uq] = VarState::Basic;
        head_[static_cast<std::size_t>(leave)] = q;

        Eta eta;
        eta.r = leave;
        eta.pivot = alpha[leave];
        for (int r = 0; r < m_; ++r) {
            if (r != leave && std::abs(alpha[r]) > kDropTolerance) {
                eta.index.push_back(r);
                eta.value.push_back(alpha[r]);
            }
        }
        etas_.push_back(std::move(eta));
        fresh = false;
        if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
            refactor();
            fresh = true;
        }
    }
}

LpSolution Simplex::finish(LpStatus status, std::int64_t iterations, std::string message) {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations;
    sol.message = std::move(message);
    sol.x.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        const auto u = static_cast<std::size_t>(j);
        double v = x_[u] * col_scale_[u];
        if (status == LpStatus::Optimal) {
            const auto& c = model_.column(j);
            v = std::clamp(v, c.lower, c.upper);
        }
        sol.x[u] = v;
    }
    sol.objective = model_.objective_value(sol.x);

    if (status == LpStatus::Optimal) {
        Eigen::VectorXd cb(m_);
        for (int r = 0; r < m_; ++r) {
            cb[r] = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])];
        }
        const Eigen::VectorXd y = m_ > 0 ? btran(cb) : Eigen::VectorXd();
        sol.duals.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            sol.duals[static_cast<std::size_t>(i)] = y[i] * row_scale_[static_cast<std::size_t>(i)] / obj_scale_;
        }
        sol.reduced_costs.resize(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            const double dj = cost_[static_cast<std::size_t>(j)] - (m_ > 0 ? dot_column(y, j) : 0.0);
            sol.reduced_costs[static_cast<std::size_t>(j)] = dj / (col_scale_[static_cast<std::size_t>(j)] * obj_scale_);
        }
    }
    return sol;
}

} // namespace

LpSolution solve_simplex(const LpModel& model, const SimplexOptions& options) {
    if (!model.finalized()) {
        throw ModelError("solve requires a finalized model");
    }
    Simplex simplex(model, options);
    return simplex.run();
}

} // namespace gridx
