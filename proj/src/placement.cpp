#include "risplace/placement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

namespace risplace {

namespace {

bool better(RisMode mode, double a, double b) {
    return mode == RisMode::focusing ? a > b : a < b;
}

bool tied(double a, double b) {
    return std::abs(a - b) <= kScoreTieRelTol * std::max(std::abs(a), std::abs(b));
}

void check_position(const RoadScenario& s, double x) {
    if (!(x >= 0 && x <= s.length_d)) {
        throw placement_error("position outside [0, length_D]");
    }
}

double focusing_product_impl(const RoadScenario& s, double x,
                             const std::vector<Vec3>& vehicles) {
    const Vec3 center = s.ris_center(x);
    double sum_reflected = 0.0;
    for (const Vec3& v : vehicles) sum_reflected += distance(center, v);
    double product = sum_reflected / static_cast<double>(vehicles.size());
    for (const BaseStation& bs : s.base_stations) {
        product *= distance(bs.position, center);
    }
    return product;
}

std::vector<Vec3> vehicle_points(const RoadScenario& s) {
    std::vector<Vec3> points;
    for (double x : vehicle_grid(s)) points.push_back(s.vehicle_position(x));
    return points;
}

/// Memoizes the single-unit objective over the integer grid. Scores do not
/// depend on previously placed units, so one cache serves the whole greedy
/// loop.
class ScoreCache {
public:
    ScoreCache(const RoadScenario& s, RisMode mode, double area)
        : s_(s),
          mode_(mode),
          area_(area),
          values_(static_cast<std::size_t>(std::floor(s.length_d)) + 1,
                  std::numeric_limits<double>::quiet_NaN()) {
        if (mode == RisMode::focusing) vehicles_ = vehicle_points(s);
    }

    double at(long x) {
        double& slot = values_[static_cast<std::size_t>(x)];
        if (std::isnan(slot)) {
            slot = mode_ == RisMode::focusing
                       ? 1.0 / focusing_product_impl(s_, static_cast<double>(x), vehicles_)
                       : beamforming_score(s_, area_, static_cast<double>(x));
        }
        return slot;
    }

private:
    const RoadScenario& s_;
    RisMode mode_;
    double area_;
    std::vector<Vec3> vehicles_;
    std::vector<double> values_;
};

/// Best score over the candidates; on ties (within kScoreTieRelTol) the
/// smallest coordinate wins. Candidates must be ascending.
std::pair<long, double> argbest(const std::vector<long>& candidates, ScoreCache& cache,
                                RisMode mode) {
    double best = cache.at(candidates.front());
    for (long x : candidates) {
        const double v = cache.at(x);
        if (better(mode, v, best)) best = v;
    }
    for (long x : candidates) {
        if (tied(cache.at(x), best)) return {x, cache.at(x)};
    }
    return {candidates.front(), best};  // unreachable: best is among candidates
}

/// Candidate positions for one greedy step. With stride > 1, scan the coarse
/// grid first, then refine at stride 1 inside +-2*stride around every coarse
/// position tied with the coarse best; a lone window could miss mirror-image
/// ties that the full scan would resolve toward the smaller coordinate.
std::vector<long> gather_candidates(const FeasibleSet& feasible, ScoreCache& cache,
                                    RisMode mode, long stride) {
    if (stride <= 1) return feasible.members(1);
    const std::vector<long> coarse = feasible.members(stride);
    if (coarse.empty()) return feasible.members(1);

    double best = cache.at(coarse.front());
    for (long x : coarse) {
        const double v = cache.at(x);
        if (better(mode, v, best)) best = v;
    }
    std::vector<long> refined;
    for (long t : coarse) {
        if (!tied(cache.at(t), best)) continue;
        const long lo = std::max(0L, t - 2 * stride);
        const long hi = std::min(feasible.road_length(), t + 2 * stride);
        for (long x = lo; x <= hi; ++x) {
            if (feasible.contains(x)) refined.push_back(x);
        }
    }
    std::sort(refined.begin(), refined.end());
    refined.erase(std::unique(refined.begin(), refined.end()), refined.end());
    return refined;
}

}  // namespace

FeasibleSet::FeasibleSet(double road_length) {
    if (!(road_length > 0)) throw placement_error("road length must be positive");
    length_ = static_cast<long>(std::floor(road_length));
}

void FeasibleSet::exclude_around(long center, double spacing) {
    exclusions_.emplace_back(center, spacing);
}

bool FeasibleSet::contains(long x) const {
    if (x < 0 || x > length_) return false;
    for (const auto& [center, spacing] : exclusions_) {
        if (std::abs(static_cast<double>(x - center)) < spacing) return false;
    }
    return true;
}

std::vector<long> FeasibleSet::members(long stride) const {
    if (stride < 1) throw placement_error("stride must be at least 1");
    std::vector<long> out;
    for (long x = 0; x <= length_; x += stride) {
        if (contains(x)) out.push_back(x);
    }
    return out;
}

double focusing_score(const RoadScenario& s, double x) {
    check_position(s, x);
    return 1.0 / focusing_product_impl(s, x, vehicle_points(s));
}

double grid_mean_reflected_distance(const RoadScenario& s, double x) {
    check_position(s, x);
    const Vec3 center = s.ris_center(x);
    const std::vector<double> grid = vehicle_grid(s);
    double sum = 0.0;
    for (double v : grid) sum += distance(center, s.vehicle_position(v));
    return sum / static_cast<double>(grid.size());
}

double focusing_product_form(const RoadScenario& s, double x) {
    check_position(s, x);
    return focusing_product_impl(s, x, vehicle_points(s));
}

double beamforming_score(const RoadScenario& s, double area, double x) {
    check_position(s, x);
    if (!(area > 0)) throw placement_error("area must be positive");
    const Vec3 center = s.ris_center(x);
    double product = 1.0;
    for (const BaseStation& bs : s.base_stations) {
        const double r_i = distance(bs.position, center);
        product *= std::abs(1.0 - s.wavelength * r_i / area);
    }
    return product;
}

PlacementResult place_ris(const RoadScenario& s, int n_units, RisMode mode, double area,
                          long stride) {
    validate(s);
    if (n_units < 1) throw placement_error("n_units must be at least 1");
    if (!(area > 0)) throw placement_error("area must be positive");
    if (stride < 1) throw placement_error("stride must be at least 1");
    const double side = std::sqrt(area);
    if (!(s.ris_height >= side / 2.0)) {
        throw scenario_error("invariant violation: ris_height >= side_length / 2");
    }
    // Units may never stand closer than a side length, or the panels would
    // overlap; the configured spacing applies when it is stricter.
    const double spacing = std::max(s.min_spacing, side);

    ScoreCache cache(s, mode, area);
    FeasibleSet feasible(s.length_d);
    PlacementResult result;
    result.mode = mode;
    for (int n = 0; n < n_units; ++n) {
        const std::vector<long> candidates = gather_candidates(feasible, cache, mode, stride);
        if (candidates.empty()) {
            throw placement_error("feasible set exhausted after " + std::to_string(n) +
                                  " of " + std::to_string(n_units) + " placements");
        }
        const auto [x, score] = argbest(candidates, cache, mode);
        result.positions.push_back(x);
        result.objective_values.push_back(score);
        feasible.exclude_around(x, spacing);
    }

    std::vector<RisUnit> units;
    units.reserve(result.positions.size());
    for (long x : result.positions) {
        units.push_back(make_ris_unit(s, static_cast<double>(x), side));
    }
    result.avg_power_achieved = avg_power(s, units, mode);
    return result;
}

PlacementResult brute_force_place(const RoadScenario& s, int n_units, RisMode mode,
                                  double area, long step, double budget) {
    validate(s);
    if (n_units < 1) throw placement_error("n_units must be at least 1");
    if (!(area > 0)) throw placement_error("area must be positive");
    if (step < 1) throw placement_error("step must be at least 1");
    const double side = std::sqrt(area);
    if (!(s.ris_height >= side / 2.0)) {
        throw scenario_error("invariant violation: ris_height >= side_length / 2");
    }
    const double spacing = std::max(s.min_spacing, side);

    std::vector<long> candidates;
    const long road = static_cast<long>(std::floor(s.length_d));
    for (long x = 0; x <= road; x += step) candidates.push_back(x);
    const double joint = std::pow(static_cast<double>(candidates.size()),
                                  static_cast<double>(n_units));
    if (joint > budget) {
        throw placement_error("search budget exceeded: " + std::to_string(joint) +
                              " joint candidates > " + std::to_string(budget));
    }

    std::vector<long> current(static_cast<std::size_t>(n_units));
    std::vector<long> best_positions;
    double best_avg = 0.0;

    auto evaluate = [&]() {
        std::vector<RisUnit> units;
        units.reserve(current.size());
        for (long x : current) units.push_back(make_ris_unit(s, static_cast<double>(x), side));
        const double avg = avg_power(s, units, mode);
        // Tuples are enumerated in ascending lexicographic order, so keeping
        // the incumbent on ties yields the lexicographically smallest
        // maximizer.
        if (best_positions.empty() || avg > best_avg * (1.0 + kScoreTieRelTol)) {
            best_avg = avg;
            best_positions = current;
        }
    };
    std::function<void(int, std::size_t)> enumerate = [&](int depth, std::size_t start) {
        if (depth == n_units) {
            evaluate();
            return;
        }
        for (std::size_t i = start; i < candidates.size(); ++i) {
            if (depth > 0 &&
                static_cast<double>(candidates[i] - current[static_cast<std::size_t>(depth) - 1]) <
                    spacing) {
                continue;
            }
            current[static_cast<std::size_t>(depth)] = candidates[i];
            enumerate(depth + 1, i + 1);
        }
    };
    enumerate(0, 0);

    if (best_positions.empty()) {
        throw placement_error("no feasible joint placement with the required spacing");
    }
    PlacementResult result;
    result.mode = mode;
    result.positions = best_positions;
    result.avg_power_achieved = best_avg;
    return result;
}

std::vector<long> equidistant_place(double road_length, int n_units) {
    if (n_units < 1) throw placement_error("n_units must be at least 1");
    if (!(road_length > 0)) throw placement_error("road length must be positive");
    std::vector<long> out;
    out.reserve(static_cast<std::size_t>(n_units));
    for (int j = 1; j <= n_units; ++j) {
        out.push_back(std::lround(static_cast<double>(j) * road_length /
                                  (static_cast<double>(n_units) + 1.0)));
    }
    return out;
}

}  // namespace risplace
