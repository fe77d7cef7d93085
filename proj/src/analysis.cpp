#include "risplace/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace risplace {

namespace {

std::vector<RisUnit> materialize(const RoadScenario& s, const std::vector<long>& placement,
                                 double side_length) {
    // Centers closer than a side length would make the panels overlap; the
    // configured spacing applies when it is stricter.
    const double required = std::max(s.min_spacing, side_length);
    std::vector<long> sorted = placement;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (static_cast<double>(sorted[i] - sorted[i - 1]) < required) {
            throw placement_error("units at " + std::to_string(sorted[i - 1]) + " and " +
                                  std::to_string(sorted[i]) +
                                  " are closer than the required spacing");
        }
    }
    std::vector<RisUnit> units;
    units.reserve(placement.size());
    for (long x : placement) {
        if (x < 0 || static_cast<double>(x) > s.length_d) {
            throw placement_error("placement outside road: " + std::to_string(x));
        }
        units.push_back(make_ris_unit(s, static_cast<double>(x), side_length));
    }
    return units;
}

std::size_t index_nearest(const std::vector<double>& xs, double target) {
    std::size_t best = 0;
    double best_gap = std::abs(xs[0] - target);
    for (std::size_t j = 1; j < xs.size(); ++j) {
        const double gap = std::abs(xs[j] - target);
        if (gap < best_gap) {
            best_gap = gap;
            best = j;
        }
    }
    return best;
}

}  // namespace

PowerProfile power_profile(const RoadScenario& s, const std::vector<long>& placement,
                           RisMode mode) {
    validate(s);
    const std::vector<RisUnit> units = materialize(s, placement, s.ris_side_length);
    PowerProfile profile;
    profile.scenario_fingerprint = scenario_fingerprint(s);
    profile.placement = placement;
    profile.mode = mode;
    for (double x : vehicle_grid(s)) {
        const ReceivedPower p = total_power(s, units, mode, x);
        profile.samples.push_back(ProfileSample{x, p, power_cap_check(p).capped});
    }
    return profile;
}

GainSummary gain_over_los(const PowerProfile& profile, const PowerProfile& baseline) {
    if (profile.samples.empty() || profile.samples.size() != baseline.samples.size()) {
        throw scenario_error("gain comparison requires matching vehicle grids");
    }
    for (std::size_t j = 0; j < profile.samples.size(); ++j) {
        if (profile.samples[j].vehicle_x != baseline.samples[j].vehicle_x) {
            throw scenario_error("gain comparison requires matching vehicle grids");
        }
    }
    GainSummary summary;
    summary.gain_db.reserve(profile.samples.size());
    double sum = 0.0;
    double min_gain = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < profile.samples.size(); ++j) {
        const double gain = profile.samples[j].power.db - baseline.samples[j].power.db;
        summary.gain_db.push_back(gain);
        sum += gain;
        min_gain = std::min(min_gain, gain);
    }
    std::vector<double> xs;
    xs.reserve(profile.samples.size());
    for (const ProfileSample& sample : profile.samples) xs.push_back(sample.vehicle_x);
    const double target = (xs.front() + xs.back()) / 2.0;
    summary.midpoint_gain_db = summary.gain_db[index_nearest(xs, target)];
    summary.mean_gain_db = sum / static_cast<double>(summary.gain_db.size());
    summary.min_gain_db = min_gain;
    return summary;
}

SizeSweepGrid size_sweep(const RoadScenario& s, RisMode mode,
                         const std::vector<double>& side_lengths, int n_units,
                         const SizeSweepOptions& options) {
    validate(s);
    if (side_lengths.empty()) {
        throw scenario_error("side_lengths must be non-empty");
    }
    for (std::size_t i = 0; i < side_lengths.size(); ++i) {
        const bool increasing = i == 0 || side_lengths[i] > side_lengths[i - 1];
        if (!(side_lengths[i] > 0) || !increasing) {
            throw scenario_error("side_lengths must be positive and strictly increasing");
        }
    }
    if (!options.reoptimize && options.frozen_placement.empty()) {
        throw placement_error("frozen placement required when re-optimization is off");
    }

    SizeSweepGrid grid;
    grid.side_lengths = side_lengths;
    grid.vehicle_xs = vehicle_grid(s);
    for (double side : side_lengths) {
        RoadScenario sc = s;
        if (options.couple_bs_height) {
            for (BaseStation& bs : sc.base_stations) bs.position.z = side / 2.0;
        }
        std::vector<long> placement;
        if (options.reoptimize) {
            placement = place_ris(sc, n_units, mode, side * side, options.stride).positions;
        } else {
            placement = options.frozen_placement;
        }
        const std::vector<RisUnit> units = materialize(sc, placement, side);
        std::vector<double> row;
        std::vector<std::uint8_t> flags;
        row.reserve(grid.vehicle_xs.size());
        flags.reserve(grid.vehicle_xs.size());
        for (double x : grid.vehicle_xs) {
            const ReceivedPower p = total_power(sc, units, mode, x);
            row.push_back(p.db);
            flags.push_back(power_cap_check(p).capped ? 1 : 0);
        }
        grid.power_db.push_back(std::move(row));
        grid.capped.push_back(std::move(flags));
    }
    return grid;
}

std::string format_sig9(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_profile_csv(const PowerProfile& profile, std::ostream& out) {
    out << "vehicle_x_m,power_linear,power_db,capped\n";
    for (const ProfileSample& sample : profile.samples) {
        out << format_sig9(sample.vehicle_x) << ',' << format_sig9(sample.power.linear)
            << ',' << format_sig9(sample.power.db) << ',' << (sample.capped ? 1 : 0)
            << '\n';
    }
}

void write_size_sweep_csv(const SizeSweepGrid& grid, std::ostream& out) {
    out << "side_length_m,vehicle_x_m,power_db,capped\n";
    for (std::size_t i = 0; i < grid.side_lengths.size(); ++i) {
        for (std::size_t j = 0; j < grid.vehicle_xs.size(); ++j) {
            out << format_sig9(grid.side_lengths[i]) << ',' << format_sig9(grid.vehicle_xs[j])
                << ',' << format_sig9(grid.power_db[i][j]) << ','
                << int(grid.capped[i][j]) << '\n';
        }
    }
}

nlohmann::ordered_json gain_summary_json(RisMode mode, const std::vector<long>& placement,
                                         const GainSummary& summary, bool capped) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(mode);
    j["placement"] = placement;
    j["midpoint_gain_db"] = summary.midpoint_gain_db;
    j["mean_gain_db"] = summary.mean_gain_db;
    j["min_gain_db"] = summary.min_gain_db;
    j["capped"] = capped;
    return j;
}

}  // namespace risplace
