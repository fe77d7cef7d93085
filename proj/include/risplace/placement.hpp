#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "risplace/propagation.hpp"
#include "risplace/scene.hpp"

namespace risplace {

class placement_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer road coordinates still open for placement: [0, D] minus an open
/// neighborhood |x - c| < spacing around every already-placed unit, so a
/// unit may sit exactly `spacing` meters from an existing one.
class FeasibleSet {
public:
    explicit FeasibleSet(double road_length);

    void exclude_around(long center, double spacing);
    bool contains(long x) const;
    /// Feasible positions at the given stride, ascending. Stride 1 is the
    /// full integer grid.
    std::vector<long> members(long stride = 1) const;
    long road_length() const { return length_; }

private:
    long length_ = 0;
    std::vector<std::pair<long, double>> exclusions_;  // (center, spacing)
};

/// Two score evaluations within this relative tolerance count as tied and
/// the smaller coordinate wins. Wide enough to absorb floating-point
/// summation-order noise between mirror-image positions, far below any
/// genuine score separation.
inline constexpr double kScoreTieRelTol = 1e-12;

/// Focusing objective for a single unit at x (maximize): reciprocal of
/// focusing_product_form, i.e.
///   1 / (rbar_r(x) * prod_k r_i^k(x)),
/// where rbar_r is the grid-mean reflected distance. Largest where the unit
/// hugs a base station: the incident-distance product collapses there while
/// the mean reflected distance barely moves (~0.007%/m), so road ends win.
/// A per-vehicle harmonic sum would instead be dominated by the handful of
/// closest grid points and its argmax snaps to grid-phase artifacts a few
/// meters inside the road; the product form is free of that.
double focusing_score(const RoadScenario& s, double x);

/// The minimized form of the same objective: mean reflected distance times
/// the product of incident distances, rbar_r * prod_k r_i^k. Its integer
/// argmin coincides with the argmax of focusing_score.
double focusing_product_form(const RoadScenario& s, double x);

/// Mean unit-to-receiver distance over the vehicle grid.
double grid_mean_reflected_distance(const RoadScenario& s, double x);

/// Beamforming objective for a single unit at x (minimize): how far each
/// base-station link is from being exactly critically sized, in the regime
/// where the reflected leg dominates (critical area ~ lambda * r_i):
///   prod_k | 1 - lambda * r_i^k(x) / A |.
/// Zero where the surface is exactly critical for that approach distance;
/// the minimizer sits where the nearest station's link saturates, at
/// r_i ~ A / lambda.
double beamforming_score(const RoadScenario& s, double area, double x);

struct PlacementResult {
    RisMode mode = RisMode::focusing;
    std::vector<long> positions;          // selection order
    std::vector<double> objective_values; // score of each pick at selection time
    double avg_power_achieved = 0.0;      // linear mean over the vehicle grid
};

/// Sequential greedy placement: pick the best-scoring feasible integer
/// coordinate, carve out the spacing neighborhood, repeat. Ties go to the
/// smallest coordinate. With stride > 1, a coarse scan at that stride is
/// refined at stride 1 within +-2*stride around every coarse tie; stride 1
/// scans the full integer grid.
PlacementResult place_ris(const RoadScenario& s, int n_units, RisMode mode,
                          double area, long stride = 1);

/// Exhaustive joint search over ascending position tuples on a step-grid,
/// maximizing mean received power directly under the spacing constraint.
/// Returns the lexicographically smallest maximizer. Refuses searches whose
/// tuple count exceeds `budget`.
PlacementResult brute_force_place(const RoadScenario& s, int n_units, RisMode mode,
                                  double area, long step, double budget = 1e8);

/// Evenly spread baseline: positions round(j * D / (n+1)), j = 1..n.
std::vector<long> equidistant_place(double road_length, int n_units);

}  // namespace risplace
