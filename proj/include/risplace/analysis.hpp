#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "risplace/placement.hpp"
#include "risplace/propagation.hpp"
#include "risplace/scene.hpp"

namespace risplace {

struct ProfileSample {
    double vehicle_x = 0.0;
    ReceivedPower power;
    bool capped = false;
};

struct PowerProfile {
    std::vector<ProfileSample> samples;  // one per vehicle grid position, ascending
    std::string scenario_fingerprint;
    std::vector<long> placement;         // empty = direct paths only
    RisMode mode = RisMode::focusing;
};

/// Received power across the whole vehicle grid for a fixed placement.
/// An empty placement yields the direct-path baseline. Placements must lie
/// on the road and respect the minimum spacing.
PowerProfile power_profile(const RoadScenario& s, const std::vector<long>& placement,
                           RisMode mode);

struct GainSummary {
    std::vector<double> gain_db;   // per grid position, profile minus baseline
    double midpoint_gain_db = 0.0; // at the grid point nearest D/2
    double mean_gain_db = 0.0;     // mean of the dB series
    double min_gain_db = 0.0;
};

/// Pointwise dB improvement of `profile` over `baseline` (same grid).
GainSummary gain_over_los(const PowerProfile& profile, const PowerProfile& baseline);

struct SizeSweepGrid {
    std::vector<double> side_lengths;               // m, ascending
    std::vector<double> vehicle_xs;                 // m, ascending
    std::vector<std::vector<double>> power_db;      // [side][vehicle]
    std::vector<std::vector<std::uint8_t>> capped;  // [side][vehicle]
};

struct SizeSweepOptions {
    /// Re-run placement for every side length (the beamforming optimum moves
    /// with the area). When false, `frozen_placement` is used for all sizes.
    bool reoptimize = true;
    std::vector<long> frozen_placement;
    /// Raise the base stations to half the side length for each size, to
    /// study the panel-height coupling. Off by default.
    bool couple_bs_height = false;
    /// Search stride forwarded to the per-size placement runs.
    long stride = 1;
};

/// Received power at every (side length, vehicle position) pair, with the
/// unit area rebuilt as L^2 per row. Side lengths must be positive and
/// strictly increasing.
SizeSweepGrid size_sweep(const RoadScenario& s, RisMode mode,
                         const std::vector<double>& side_lengths, int n_units,
                         const SizeSweepOptions& options = {});

/// Fixed formatting used in all text outputs: 9 significant digits, '.'
/// decimal separator, infinities as "inf"/"-inf". Deterministic across runs.
std::string format_sig9(double v);

/// CSV with header vehicle_x_m,power_linear,power_db,capped.
void write_profile_csv(const PowerProfile& profile, std::ostream& out);

/// CSV with header side_length_m,vehicle_x_m,power_db,capped, row-major in
/// side length.
void write_size_sweep_csv(const SizeSweepGrid& grid, std::ostream& out);

/// JSON object {mode, placement, midpoint_gain_db, mean_gain_db,
/// min_gain_db, capped}.
nlohmann::ordered_json gain_summary_json(RisMode mode, const std::vector<long>& placement,
                                         const GainSummary& summary, bool capped);

}  // namespace risplace
