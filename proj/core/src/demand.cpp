#include "gridx/demand.hpp"

#include "gridx/csv.hpp"
#include "gridx/error.hpp"

#include <fmt/format.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>

namespace gridx {

namespace {

constexpr double kMwhPerTwh = 1e6;
constexpr double kMwPerGw = 1000.0;
constexpr char kMagic[4] = {'G', 'X', 'D', 'C'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little, "demand cube I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw InputError("demand cube file is truncated");
    return v;
}

void put_string(std::ostream& out, const std::string& s) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
    const auto n = get<std::uint32_t>(in);
    std::string s(n, '\0');
    in.read(s.data(), n);
    if (!in) throw InputError("demand cube file is truncated");
    return s;
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
    put<std::uint64_t>(out, v.size());
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> get_doubles(std::istream& in) {
    const auto n = get<std::uint64_t>(in);
    std::vector<double> v(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw InputError("demand cube file is truncated");
    return v;
}

} // namespace

double base_increment_mw(double energy_twh, double energy_t0_twh, std::size_t num_buses) {
    if (num_buses == 0) {
        throw InputError("base load needs at least one bus");
    }
    return (energy_twh - energy_t0_twh) * kMwhPerTwh / (static_cast<double>(num_buses) * kHoursPerYear);
}

double dc_system_mw(double peak_gw, double load_factor) {
    if (!(load_factor > 0.0 && load_factor <= 1.0)) {
        throw InputError(fmt::format("data-center load factor must lie in (0, 1], got {}", load_factor));
    }
    return peak_gw * load_factor * kMwPerGw;
}

double em_system_mw(double heat_gw, double phi, double eta_elec) {
    if (!(eta_elec > 0.0 && eta_elec <= 1.0)) {
        throw InputError(fmt::format("electric heating efficiency must lie in (0, 1], got {}", eta_elec));
    }
    return heat_gw * phi / eta_elec * kMwPerGw;
}

std::vector<double> compute_peak(const DemandScenario& d) {
    std::vector<double> peak(d.base_peak_gw.size());
    for (std::size_t t = 0; t < peak.size(); ++t) {
        peak[t] = (d.base_peak_gw[t] + d.dc_peak_gw[t] + d.manufacturing_heat_gw * d.electrification[t] / d.eta_elec) *
                  kMwPerGw;
    }
    return peak;
}

double profile_energy_twh(const ProfileMatrix& load) {
    double mwh = 0.0;
    for (const auto& series : load.values) {
        mwh += std::accumulate(series.begin(), series.end(), 0.0);
    }
    return mwh / kMwhPerTwh;
}

std::vector<double> build_base_load(const RepresentativeDays& days, const std::vector<double>& energy_twh,
                                    double energy_t0_twh) {
    const std::size_t per_year = days.base_load.size();
    std::vector<double> out(energy_twh.size() * per_year);
    for (std::size_t t = 0; t < energy_twh.size(); ++t) {
        const double inc = base_increment_mw(energy_twh[t], energy_t0_twh, days.num_buses);
        for (std::size_t i = 0; i < per_year; ++i) {
            const double v = days.base_load[i] + inc;
            if (v < -1e-9) {
                throw InputError(fmt::format("base load turns negative in year index {} ({:.6g} MW)", t, v));
            }
            out[t * per_year + i] = std::max(v, 0.0);
        }
    }
    return out;
}

std::map<RegionId, std::vector<double>> build_dc_load(const std::vector<double>& peak_gw, double load_factor,
                                                      const std::map<RegionId, double>& shares) {
    std::map<RegionId, std::vector<double>> out;
    for (const auto& [region, psi] : shares) {
        auto& series = out[region];
        for (double p : peak_gw) series.push_back(psi * dc_system_mw(p, load_factor));
    }
    return out;
}

std::map<RegionId, std::vector<double>> build_em_load(double heat_gw, const std::vector<double>& phi,
                                                      double eta_elec, const std::map<RegionId, double>& shares) {
    for (double f : phi) {
        if (f < 0.0 || f > 1.0) {
            throw InputError(fmt::format("electrification ratio {} outside [0, 1]", f));
        }
    }
    std::map<RegionId, std::vector<double>> out;
    for (const auto& [region, psi] : shares) {
        auto& series = out[region];
        for (double f : phi) series.push_back(psi * em_system_mw(heat_gw, f, eta_elec));
    }
    return out;
}

DemandCube build_demand_cube(const DemandScenario& demand, const RepresentativeDays& days,
                             const std::map<RegionId, double>& dc_shares, const std::map<RegionId, double>& em_shares,
                             double energy_t0_twh) {
    DemandCube cube;
    cube.num_years = demand.base_energy_twh.size();
    cube.num_days = static_cast<std::size_t>(days.k);
    cube.num_buses = days.num_buses;
    cube.day_weight = days.weight;
    cube.base = build_base_load(days, demand.base_energy_twh, energy_t0_twh);
    for (const auto& [region, series] : build_dc_load(demand.dc_peak_gw, demand.dc_load_factor, dc_shares)) {
        cube.dc_regions.push_back(region);
        cube.dc.insert(cube.dc.end(), series.begin(), series.end());
    }
    for (const auto& [region, series] :
         build_em_load(demand.manufacturing_heat_gw, demand.electrification, demand.eta_elec, em_shares)) {
        cube.em_regions.push_back(region);
        cube.em.insert(cube.em.end(), series.begin(), series.end());
    }
    cube.peak = compute_peak(demand);
    return cube;
}

double DemandCube::base_energy_mwh(std::size_t t) const {
    double total = 0.0;
    for (std::size_t d = 0; d < num_days; ++d) {
        double day = 0.0;
        for (std::size_t n = 0; n < num_buses; ++n) {
            for (int h = 0; h < kHoursPerDay; ++h) {
                day += base_at(t, static_cast<int>(d), static_cast<BusId>(n), h);
            }
        }
        total += day_weight[d] * day;
    }
    return total;
}

double DemandCube::dc_energy_mwh(std::size_t t) const {
    double mw = 0.0;
    for (std::size_t c = 0; c < dc_regions.size(); ++c) mw += dc_at(c, t);
    return mw * kHoursPerYear;
}

double DemandCube::em_energy_mwh(std::size_t t) const {
    double mw = 0.0;
    for (std::size_t e = 0; e < em_regions.size(); ++e) mw += em_at(e, t);
    return mw * kHoursPerYear;
}

double DemandCube::total_energy_mwh(std::size_t t) const {
    return base_energy_mwh(t) + dc_energy_mwh(t) + em_energy_mwh(t);
}

void write_demand_cube(const DemandCube& cube, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(fmt::format("cannot write '{}'", path.string()));
    }
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kFormatVersion);
    put<std::uint64_t>(out, cube.num_years);
    put<std::uint64_t>(out, cube.num_days);
    put<std::uint64_t>(out, cube.num_buses);
    put<std::uint64_t>(out, cube.day_weight.size());
    for (int w : cube.day_weight) put<std::int32_t>(out, w);
    put<std::uint64_t>(out, cube.dc_regions.size());
    for (const auto& r : cube.dc_regions) put_string(out, r);
    put<std::uint64_t>(out, cube.em_regions.size());
    for (const auto& r : cube.em_regions) put_string(out, r);
    put_doubles(out, cube.base);
    put_doubles(out, cube.dc);
    put_doubles(out, cube.em);
    put_doubles(out, cube.peak);
    if (!out) {
        throw Error(fmt::format("write to '{}' failed", path.string()));
    }
}

DemandCube read_demand_cube(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open '{}'", path.string()));
    }
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw InputError(fmt::format("'{}' is not a demand cube", path.string()));
    }
    if (get<std::uint32_t>(in) != kFormatVersion) {
        throw InputError(fmt::format("'{}': unsupported demand cube version", path.string()));
    }
    DemandCube cube;
    cube.num_years = get<std::uint64_t>(in);
    cube.num_days = get<std::uint64_t>(in);
    cube.num_buses = get<std::uint64_t>(in);
    cube.day_weight.resize(get<std::uint64_t>(in));
    for (auto& w : cube.day_weight) w = get<std::int32_t>(in);
    cube.dc_regions.resize(get<std::uint64_t>(in));
    for (auto& r : cube.dc_regions) r = get_string(in);
    cube.em_regions.resize(get<std::uint64_t>(in));
    for (auto& r : cube.em_regions) r = get_string(in);
    cube.base = get_doubles(in);
    cube.dc = get_doubles(in);
    cube.em = get_doubles(in);
    cube.peak = get_doubles(in);
    if (cube.base.size() != cube.num_years * cube.num_days * cube.num_buses * kHoursPerDay ||
        cube.dc.size() != cube.dc_regions.size() * cube.num_years ||
        cube.em.size() != cube.em_regions.size() * cube.num_years || cube.peak.size() != cube.num_years) {
        throw InputError(fmt::format("'{}': inconsistent demand cube dimensions", path.string()));
    }
    return cube;
}

void write_demand_audit(const DemandCube& cube, const Horizon& horizon, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (std::size_t t = 0; t < cube.num_years; ++t) {
        const auto path = dir / fmt::format("demand_{}.csv", horizon.year(t));
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(fmt::format("cannot write '{}'", path.string()));
        }
        out << "kind,location,day,hour,mw\n";
        for (std::size_t n = 0; n < cube.num_buses; ++n) {
            for (std::size_t d = 0; d < cube.num_days; ++d) {
                for (int h = 0; h < kHoursPerDay; ++h) {
                    out << "base," << n << ',' << d << ',' << h << ','
                        << csv::format_number(cube.base_at(t, static_cast<int>(d), static_cast<BusId>(n), h)) << '\n';
                }
            }
        }
        auto flat = [&](std::string_view kind, const std::vector<RegionId>& regions, auto value) {
            for (std::size_t r = 0; r < regions.size(); ++r) {
                const std::string mw = csv::format_number(value(r));
                for (std::size_t d = 0; d < cube.num_days; ++d) {
                    for (int h = 0; h < kHoursPerDay; ++h) {
                        out << kind << ',' << regions[r] << ',' << d << ',' << h << ',' << mw << '\n';
                    }
                }
            }
        };
        flat("dc", cube.dc_regions, [&](std::size_t r) { return cube.dc_at(r, t); });
        flat("em", cube.em_regions, [&](std::size_t r) { return cube.em_at(r, t); });
    }
}

} // namespace gridx
