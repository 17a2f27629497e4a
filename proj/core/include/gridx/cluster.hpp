#pragma once

// Representative days: k-means over 365 daily feature vectors built from the
// hourly base load and renewable capacity factors of every bus.

#include "gridx/domain.hpp"
#include "gridx/ingest.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gridx {

inline constexpr double kHydroCapacityFactor = 0.41;

/// Hydro availability is flat across hours, days and years.
constexpr double hydro_cf() noexcept { return kHydroCapacityFactor; }
std::vector<double> hydro_cf_profile(std::size_t hours = kHoursPerDay);

/// CF = generation / capacity per hour, clamped to [0, 1]. Clamped hours are
/// counted in `clamped_hours` when given. Throws InputError for a bus with
/// nonzero generation and no capacity.
ProfileMatrix compute_renewable_cf(const ProfileMatrix& generation, const std::map<BusId, double>& capacity_mw,
                                   std::size_t* clamped_hours = nullptr);

/// 365 rows of equal length, row-major.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t dims = 0;
    std::vector<double> data;

    const double* row(std::size_t i) const { return data.data() + i * dims; }
    double* row(std::size_t i) { return data.data() + i * dims; }
};

/// Per day: z-normalized 24-hour load of every bus, then raw solar CF and raw
/// wind CF of every bus that has a profile.
FeatureMatrix build_day_features(const ProfileSet& profiles, std::size_t num_buses);

struct KMeansResult {
    std::vector<int> labels; // per row
    std::vector<double> centroids; // k * dims
    double inertia = 0.0;
    int restart = 0; // index of the winning restart
};

/// Best of `restarts` k-means++ runs; ties go to the lowest restart index.
KMeansResult kmeans(const FeatureMatrix& x, int k, std::uint64_t seed, int restarts, int max_iterations = 300);

/// Lloyd iterations from given centroids.
KMeansResult kmeans_from(const FeatureMatrix& x, std::vector<double> centroids, int k, int max_iterations = 300);

/// Sum of squared distances to assigned centroids.
double inertia(const FeatureMatrix& x, const std::vector<int>& labels, const std::vector<double>& centroids);

/// Mean silhouette; points in singleton clusters score 0.
double silhouette(const FeatureMatrix& x, const std::vector<int>& labels, int k);

struct ClusterDiagnostic {
    int k = 0;
    double inertia = 0.0;
    double silhouette = 0.0;
};

/// One row per k in [k_min, k_max]. Each k also tries the previous k's
/// centroids plus one seeded point, so inertia never increases with k.
std::vector<ClusterDiagnostic> clustering_diagnostics(const FeatureMatrix& x, int k_min, int k_max,
                                                      std::uint64_t seed, int restarts, int max_iterations = 300);

struct RepresentativeDays {
    int k = 0;
    std::size_t num_buses = 0;
    std::vector<int> assignment; // calendar day (0..364) -> cluster
    std::vector<int> weight;     // days per cluster
    std::vector<int> exemplar;   // calendar day closest to each centroid
    std::vector<double> base_load; // [d][n][h], MW
    std::vector<double> cf_solar;  // [d][n][h]
    std::vector<double> cf_wind;   // [d][n][h]
    std::vector<std::uint8_t> has_solar; // per bus
    std::vector<std::uint8_t> has_wind;  // per bus
    double inertia = 0.0;

    std::size_t offset(int d, BusId n, int h) const {
        return (static_cast<std::size_t>(d) * num_buses + static_cast<std::size_t>(n)) * kHoursPerDay +
               static_cast<std::size_t>(h);
    }
    double load(int d, BusId n, int h) const { return base_load[offset(d, n, h)]; }
    /// Renewable availability; hydro is constant.
    double cf(TechKind tech, int d, BusId n, int h) const;
    bool has_profile(TechKind tech, BusId n) const;
    int total_weight() const;

    friend bool operator==(const RepresentativeDays&, const RepresentativeDays&) = default;
};

/// Clusters the year and builds per-cluster profiles (member mean or medoid
/// day). Clusters are numbered by first appearance in the calendar.
RepresentativeDays cluster_days(const ProfileSet& profiles, std::size_t num_buses, const ClusteringSettings& settings);

/// Builds profiles for a given assignment; used by cluster_days and tests.
RepresentativeDays representative_days_from(const ProfileSet& profiles, std::size_t num_buses,
                                            const FeatureMatrix& features, const std::vector<int>& labels, int k,
                                            ProfileKind profile);

std::string repdays_to_json(const RepresentativeDays& days);
RepresentativeDays repdays_from_json(std::string_view text);

} // namespace gridx
