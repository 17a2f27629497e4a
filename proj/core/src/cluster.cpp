#include "gridx/cluster.hpp"

#include "gridx/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace gridx {

namespace {

constexpr std::size_t kHours = kHoursPerDay;
constexpr std::size_t kDays = kDaysPerYear;

// Platform-independent uniform in [0, 1).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

double squared_distance(const double* a, const double* b, std::size_t dims) {
    double s = 0.0;
    for (std::size_t i = 0; i < dims; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

int nearest(const FeatureMatrix& x, std::size_t i, const std::vector<double>& centroids, int k, double* dist) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
        const double d = squared_distance(x.row(i), centroids.data() + static_cast<std::size_t>(c) * x.dims, x.dims);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    if (dist) *dist = best_d;
    return best;
}

std::vector<double> kmeanspp_init(const FeatureMatrix& x, int k, Rng& rng) {
    const std::size_t n = x.rows;
    std::vector<double> centroids(static_cast<std::size_t>(k) * x.dims);
    auto pick = [&](std::size_t c, std::size_t i) {
        std::copy(x.row(i), x.row(i) + x.dims, centroids.begin() + static_cast<std::ptrdiff_t>(c * x.dims));
    };
    const auto first = std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
    pick(0, first);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        d2[i] = squared_distance(x.row(i), centroids.data(), x.dims);
    }
    for (int c = 1; c < k; ++c) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        std::size_t chosen = 0;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cum = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum > target && d2[i] > 0.0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
        }
        pick(static_cast<std::size_t>(c), chosen);
        const double* cen = centroids.data() + static_cast<std::size_t>(c) * x.dims;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(x.row(i), cen, x.dims));
        }
    }
    return centroids;
}

void check_k(const FeatureMatrix& x, int k) {
    if (k < 1) {
        throw InputError(fmt::format("k must be at least 1, got {}", k));
    }
    if (static_cast<std::size_t>(k) > x.rows) {
        throw InputError(fmt::format("k = {} exceeds the number of days ({})", k, x.rows));
    }
}


} // namespace

std::vector<double> hydro_cf_profile(std::size_t hours) { return std::vector<double>(hours, kHydroCapacityFactor); }

ProfileMatrix compute_renewable_cf(const ProfileMatrix& generation, const std::map<BusId, double>& capacity_mw,
                                   std::size_t* clamped_hours) {
    ProfileMatrix out;
    std::size_t clamped = 0;
    for (std::size_t e = 0; e < generation.size(); ++e) {
        const BusId bus = generation.entities[e];
        const auto& gen = generation.values[e];
        const auto it = capacity_mw.find(bus);
        const double cap = it == capacity_mw.end() ? 0.0 : it->second;
        std::vector<double> cf(gen.size(), 0.0);
        if (cap <= 0.0) {
            if (std::any_of(gen.begin(), gen.end(), [](double v) { return v != 0.0; })) {
                throw InputError(fmt::format("bus {} has generation but no installed capacity", bus));
            }
        } else {
            for (std::size_t h = 0; h < gen.size(); ++h) {
                const double v = gen[h] / cap;
                if (v > 1.0 || v < 0.0) ++clamped;
                cf[h] = std::clamp(v, 0.0, 1.0);
            }
        }
        out.entities.push_back(bus);
        out.values.push_back(std::move(cf));
    }
    if (clamped_hours) *clamped_hours = clamped;
    return out;
}

FeatureMatrix build_day_features(const ProfileSet& profiles, std::size_t num_buses) {
    for (const auto* m : {&profiles.base_load, &profiles.cf_solar, &profiles.cf_wind}) {
        for (BusId b : m->entities) {
            if (b < 0 || static_cast<std::size_t>(b) >= num_buses) {
                throw InputError(fmt::format("profile references unknown bus {}", b));
            }
        }
    }
    const std::size_t blocks = profiles.base_load.size() + profiles.cf_solar.size() + profiles.cf_wind.size();
    FeatureMatrix f;
    f.rows = kDays;
    f.dims = blocks * kHours;
    f.data.assign(f.rows * f.dims, 0.0);

    std::size_t block = 0;
    for (std::size_t e = 0; e < profiles.base_load.size(); ++e, ++block) {
        const auto& series = profiles.base_load.values[e];
        const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
        double var = 0.0;
        for (double v : series) var += (v - mean) * (v - mean);
        double sd = std::sqrt(var / static_cast<double>(series.size()));
        if (!(sd > 0.0)) sd = 1.0;
        for (std::size_t d = 0; d < kDays; ++d) {
            for (std::size_t h = 0; h < kHours; ++h) {
                f.row(d)[block * kHours + h] = (series[d * kHours + h] - mean) / sd;
            }
        }
    }
    for (const auto* m : {&profiles.cf_solar, &profiles.cf_wind}) {
        for (std::size_t e = 0; e < m->size(); ++e, ++block) {
            const auto& series = m->values[e];
            for (std::size_t d = 0; d < kDays; ++d) {
                std::copy_n(series.begin() + static_cast<std::ptrdiff_t>(d * kHours), kHours,
                            f.row(d) + block * kHours);
            }
        }
    }
    return f;
}

KMeansResult kmeans_from(const FeatureMatrix& x, std::vector<double> centroids, int k, int max_iterations) {
    check_k(x, k);
    const std::size_t n = x.rows;
    const std::size_t dims = x.dims;
    std::vector<int> labels(n, -1);
    std::vector<double> dist(n, 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(k));

    for (int iter = 0; iter < std::max(1, max_iterations); ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int c = nearest(x, i, centroids, k, &dist[i]);
            if (c != labels[i]) {
                labels[i] = c;
                changed = true;
            }
        }
        // An empty cluster takes the point farthest from its own centroid.
        std::fill(counts.begin(), counts.end(), 0);
        for (int l : labels) ++counts[static_cast<std::size_t>(l)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] != 0) continue;
            std::size_t far = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(labels[i])] > 1 && (far == n || dist[i] > dist[far])) far = i;
            }
            if (far == n) break;
            --counts[static_cast<std::size_t>(labels[far])];
            labels[far] = c;
            dist[far] = 0.0;
            counts[static_cast<std::size_t>(c)] = 1;
            changed = true;
        }
        if (!changed && iter > 0) break;

        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double* cen = centroids.data() + static_cast<std::size_t>(labels[i]) * dims;
            const double* row = x.row(i);
            for (std::size_t j = 0; j < dims; ++j) cen[j] += row[j];
        }
        for (int c = 0; c < k; ++c) {
            const auto cnt = static_cast<double>(counts[static_cast<std::size_t>(c)]);
            double* cen = centroids.data() + static_cast<std::size_t>(c) * dims;
            for (std::size_t j = 0; j < dims; ++j) cen[j] /= cnt;
        }
    }
    KMeansResult result;
    result.inertia = inertia(x, labels, centroids);
    result.labels = std::move(labels);
    result.centroids = std::move(centroids);
    return result;
}

KMeansResult kmeans(const FeatureMatrix& x, int k, std::uint64_t seed, int restarts, int max_iterations) {
    check_k(x, k);
    if (restarts < 1) {
        throw InputError("restarts must be at least 1");
    }
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed, static_cast<std::uint64_t>(r));
        auto result = kmeans_from(x, kmeanspp_init(x, k, rng), k, max_iterations);
        if (result.inertia < best.inertia) {
            best = std::move(result);
            best.restart = r;
        }
    }
    return best;
}

double inertia(const FeatureMatrix& x, const std::vector<int>& labels, const std::vector<double>& centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        total += squared_distance(x.row(i), centroids.data() + static_cast<std::size_t>(labels[i]) * x.dims, x.dims);
    }
    return total;
}

double silhouette(const FeatureMatrix& x, const std::vector<int>& labels, int k) {
    const std::size_t n = x.rows;
    if (n == 0 || k < 2) return 0.0;
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    std::vector<double> sums(static_cast<std::size_t>(k));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (counts[own] <= 1) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sums[static_cast<std::size_t>(labels[j])] += std::sqrt(squared_distance(x.row(i), x.row(j), x.dims));
        }
        const double a = sums[own] / static_cast<double>(counts[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sums.size(); ++c) {
            if (c != own && counts[c] > 0) b = std::min(b, sums[c] / static_cast<double>(counts[c]));
        }
        const double denom = std::max(a, b);
        if (denom > 0.0 && std::isfinite(b)) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

std::vector<ClusterDiagnostic> clustering_diagnostics(const FeatureMatrix& x, int k_min, int k_max,
                                                      std::uint64_t seed, int restarts, int max_iterations) {
    if (k_min < 1 || k_max < k_min) {
        throw InputError(fmt::format("invalid k range [{}, {}]", k_min, k_max));
    }
    std::vector<ClusterDiagnostic> rows;
    KMeansResult prev;
    for (int k = k_min; k <= k_max; ++k) {
        auto best = kmeans(x, k, seed, restarts, max_iterations);
        if (k > k_min) {
            // Previous centroids plus the point farthest from them.
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < x.rows; ++i) {
                double d = 0.0;
                nearest(x, i, prev.centroids, k - 1, &d);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            auto init = prev.centroids;
            init.insert(init.end(), x.row(far), x.row(far) + x.dims);
            auto nested = kmeans_from(x, std::move(init), k, max_iterations);
            if (nested.inertia < best.inertia) best = std::move(nested);
        }
        rows.push_back({k, best.inertia, silhouette(x, best.labels, k)});
        prev = std::move(best);
    }
    return rows;
}

// ---------------------------------------------------------------------------

double RepresentativeDays::cf(TechKind tech, int d, BusId n, int h) const {
    switch (tech) {
    case TechKind::Solar: return cf_solar[offset(d, n, h)];
    case TechKind::Wind: return cf_wind[offset(d, n, h)];
    case TechKind::Hydro: return kHydroCapacityFactor;
    default: throw ModelError(fmt::format("{} has no capacity-factor profile", to_string(tech)));
    }
}

bool RepresentativeDays::has_profile(TechKind tech, BusId n) const {
    switch (tech) {
    case TechKind::Solar: return has_solar[static_cast<std::size_t>(n)] != 0;
    case TechKind::Wind: return has_wind[static_cast<std::size_t>(n)] != 0;
    case TechKind::Hydro: return true;
    default: return false;
    }
}

int RepresentativeDays::total_weight() const { return std::accumulate(weight.begin(), weight.end(), 0); }

RepresentativeDays representative_days_from(const ProfileSet& profiles, std::size_t num_buses,
                                            const FeatureMatrix& features, const std::vector<int>& labels, int k,
                                            ProfileKind profile) {
    RepresentativeDays rd;
    rd.k = k;
    rd.num_buses = num_buses;
    rd.assignment = labels;
    rd.weight.assign(static_cast<std::size_t>(k), 0);
    for (int l : labels) ++rd.weight[static_cast<std::size_t>(l)];
    for (int c = 0; c < k; ++c) {
        if (rd.weight[static_cast<std::size_t>(c)] == 0) {
            throw ModelError(fmt::format("cluster {} is empty", c));
        }
    }

    // Exemplar: member closest to the member mean in feature space.
    std::vector<double> centroids(static_cast<std::size_t>(k) * features.dims, 0.0);
    for (std::size_t i = 0; i < features.rows; ++i) {
        double* cen = centroids.data() + static_cast<std::size_t>(labels[i]) * features.dims;
        for (std::size_t j = 0; j < features.dims; ++j) cen[j] += features.row(i)[j];
    }
    for (int c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < features.dims; ++j) {
            centroids[static_cast<std::size_t>(c) * features.dims + j] /= rd.weight[static_cast<std::size_t>(c)];
        }
    }
    rd.exemplar.assign(static_cast<std::size_t>(k), -1);
    std::vector<double> best(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < features.rows; ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        const double d = squared_distance(features.row(i), centroids.data() + c * features.dims, features.dims);
        if (d < best[c]) {
            best[c] = d;
            rd.exemplar[c] = static_cast<int>(i);
        }
    }

    const std::size_t size = static_cast<std::size_t>(k) * num_buses * kHours;
    rd.base_load.assign(size, 0.0);
    rd.cf_solar.assign(size, 0.0);
    rd.cf_wind.assign(size, 0.0);
    rd.has_solar.assign(num_buses, 0);
    rd.has_wind.assign(num_buses, 0);
    for (BusId b : profiles.cf_solar.entities) rd.has_solar[static_cast<std::size_t>(b)] = 1;
    for (BusId b : profiles.cf_wind.entities) rd.has_wind[static_cast<std::size_t>(b)] = 1;

    auto fill = [&](const ProfileMatrix& m, std::vector<double>& out) {
        for (std::size_t e = 0; e < m.size(); ++e) {
            const BusId bus = m.entities[e];
            const auto& series = m.values[e];
            if (profile == ProfileKind::Medoid) {
                for (int c = 0; c < k; ++c) {
                    const auto day = static_cast<std::size_t>(rd.exemplar[static_cast<std::size_t>(c)]);
                    for (std::size_t h = 0; h < kHours; ++h) {
                        out[rd.offset(c, bus, static_cast<int>(h))] = series[day * kHours + h];
                    }
                }
                continue;
            }
            for (std::size_t day = 0; day < kDays; ++day) {
                const int c = labels[day];
                for (std::size_t h = 0; h < kHours; ++h) {
                    out[rd.offset(c, bus, static_cast<int>(h))] += series[day * kHours + h];
                }
            }
            for (int c = 0; c < k; ++c) {
                for (std::size_t h = 0; h < kHours; ++h) {
                    out[rd.offset(c, bus, static_cast<int>(h))] /= rd.weight[static_cast<std::size_t>(c)];
                }
            }
        }
    };
    fill(profiles.base_load, rd.base_load);
    fill(profiles.cf_solar, rd.cf_solar);
    fill(profiles.cf_wind, rd.cf_wind);
    return rd;
}

RepresentativeDays cluster_days(const ProfileSet& profiles, std::size_t num_buses, const ClusteringSettings& settings) {
    if (settings.k < 1 || settings.k > kDaysPerYear) {
        throw InputError(fmt::format("k must lie in [1, {}], got {}", kDaysPerYear, settings.k));
    }
    const FeatureMatrix features = build_day_features(profiles, num_buses);
    auto result = kmeans(features, settings.k, settings.seed, settings.restarts, settings.max_iterations);

    // Renumber clusters by first appearance in the calendar.
    std::vector<int> remap(static_cast<std::size_t>(settings.k), -1);
    int next = 0;
    for (int& l : result.labels) {
        auto& r = remap[static_cast<std::size_t>(l)];
        if (r < 0) r = next++;
        l = r;
    }
    auto rd = representative_days_from(profiles, num_buses, features, result.labels, settings.k, settings.profile);
    rd.inertia = result.inertia;
    return rd;
}

// ---------------------------------------------------------------------------

std::string repdays_to_json(const RepresentativeDays& rd) {
    using nlohmann::json;
    json root;
    root["k"] = rd.k;
    root["num_buses"] = rd.num_buses;
    root["inertia"] = rd.inertia;
    root["assignment"] = rd.assignment;
    json days = json::array();
    for (int d = 0; d < rd.k; ++d) {
        json day;
        day["weight"] = rd.weight[static_cast<std::size_t>(d)];
        day["exemplar_day"] = rd.exemplar[static_cast<std::size_t>(d)];
        auto block = [&](const std::vector<double>& v, const std::vector<std::uint8_t>* mask) {
            json out = json::object();
            for (std::size_t n = 0; n < rd.num_buses; ++n) {
                if (mask && !(*mask)[n]) continue;
                const auto first = v.begin() + static_cast<std::ptrdiff_t>(rd.offset(d, static_cast<BusId>(n), 0));
                out[std::to_string(n)] = std::vector<double>(first, first + kHoursPerDay);
            }
            return out;
        };
        day["base_load"] = block(rd.base_load, nullptr);
        day["cf_solar"] = block(rd.cf_solar, &rd.has_solar);
        day["cf_wind"] = block(rd.cf_wind, &rd.has_wind);
        days.push_back(std::move(day));
    }
    root["days"] = std::move(days);
    return root.dump(1) + "\n";
}

RepresentativeDays repdays_from_json(std::string_view text) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(fmt::format("representative days file is not valid JSON: {}", e.what()));
    }
    RepresentativeDays rd;
    try {
        rd.k = root.at("k").get<int>();
        rd.num_buses = root.at("num_buses").get<std::size_t>();
        rd.inertia = root.at("inertia").get<double>();
        rd.assignment = root.at("assignment").get<std::vector<int>>();
        const auto& days = root.at("days");
        if (static_cast<int>(days.size()) != rd.k) {
            throw InputError("representative days: 'days' length differs from k");
        }
        const std::size_t size = static_cast<std::size_t>(rd.k) * rd.num_buses * kHours;
        rd.base_load.assign(size, 0.0);
        rd.cf_solar.assign(size, 0.0);
        rd.cf_wind.assign(size, 0.0);
        rd.has_solar.assign(rd.num_buses, 0);
        rd.has_wind.assign(rd.num_buses, 0);
        for (int d = 0; d < rd.k; ++d) {
            const auto& day = days[static_cast<std::size_t>(d)];
            rd.weight.push_back(day.at("weight").get<int>());
            rd.exemplar.push_back(day.at("exemplar_day").get<int>());
            auto read = [&](const json& block, std::vector<double>& out, std::vector<std::uint8_t>* mask) {
                for (const auto& [key, values] : block.items()) {
                    const auto n = static_cast<std::size_t>(std::stoul(key));
                    if (n >= rd.num_buses || values.size() != kHours) {
                        throw InputError(fmt::format("representative days: bad profile for bus {}", key));
                    }
                    if (mask) (*mask)[n] = 1;
                    for (std::size_t h = 0; h < kHours; ++h) {
                        out[rd.offset(d, static_cast<BusId>(n), static_cast<int>(h))] = values[h].get<double>();
                    }
                }
            };
            read(day.at("base_load"), rd.base_load, nullptr);
            read(day.at("cf_solar"), rd.cf_solar, &rd.has_solar);
            read(day.at("cf_wind"), rd.cf_wind, &rd.has_wind);
        }
    } catch (const json::exception& e) {
        throw InputError(fmt::format("representative days file: {}", e.what()));
    }
    if (rd.total_weight() != kDaysPerYear) {
        throw InputError(fmt::format("representative day weights sum to {}, expected {}", rd.total_weight(),
                                     kDaysPerYear));
    }
    return rd;
}

} // namespace gridx
