#include "risplace/propagation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace risplace {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void check_vehicle_x(const RoadScenario& s, double vehicle_x) {
    if (!(vehicle_x >= 0 && vehicle_x <= s.length_d)) {
        throw scenario_error("invariant violation: vehicle_x within [0, length_D]");
    }
}

}  // namespace

const char* to_string(RisMode m) {
    return m == RisMode::focusing ? "focusing" : "beamforming";
}

RisMode parse_mode(const std::string& name) {
    if (name == "focusing") return RisMode::focusing;
    if (name == "beamforming") return RisMode::beamforming;
    throw scenario_error("unknown mode: " + name + " (expected focusing or beamforming)");
}

ReceivedPower make_received_power(double linear) {
    ReceivedPower p;
    p.linear = linear;
    p.db = linear > 0 ? 10.0 * std::log10(linear)
                      : -std::numeric_limits<double>::infinity();
    return p;
}

double los_amplitude(const RoadScenario& s, double vehicle_x) {
    check_vehicle_x(s, vehicle_x);
    const Vec3 vehicle = s.vehicle_position(vehicle_x);
    double sum = 0.0;
    for (const BaseStation& bs : s.base_stations) {
        sum += std::sqrt(bs.gain * s.vehicle_gain) / distance(bs.position, vehicle);
    }
    return s.wavelength / kFourPi * sum;
}

double critical_area(double r_incident, double r_reflected, double wavelength) {
    if (!(r_incident > 0) || !(r_reflected > 0)) {
        throw scenario_error("critical_area requires positive distances");
    }
    return r_incident * r_reflected / (r_incident + r_reflected) * wavelength;
}

int link_beta(double area, double threshold_area) {
    return area >= threshold_area ? 1 : 0;
}

double specular_amplitude(const RoadScenario& s, const std::vector<RisUnit>& units,
                          double vehicle_x) {
    check_vehicle_x(s, vehicle_x);
    const Vec3 vehicle = s.vehicle_position(vehicle_x);
    double sum = 0.0;
    for (const BaseStation& bs : s.base_stations) {
        const double g = std::sqrt(bs.gain * s.vehicle_gain);
        for (const RisUnit& unit : units) {
            const double r_i = distance(bs.position, unit.center);
            const double r_r = distance(unit.center, vehicle);
            sum += g * unit.element_gain / (r_i + r_r);
        }
    }
    return s.wavelength / kFourPi * sum;
}

double diffuse_amplitude(const RoadScenario& s, const std::vector<RisUnit>& units,
                         double vehicle_x) {
    check_vehicle_x(s, vehicle_x);
    const Vec3 vehicle = s.vehicle_position(vehicle_x);
    double sum = 0.0;
    for (const BaseStation& bs : s.base_stations) {
        const double g = std::sqrt(bs.gain * s.vehicle_gain);
        for (const RisUnit& unit : units) {
            const double r_i = distance(bs.position, unit.center);
            const double r_r = distance(unit.center, vehicle);
            sum += unit.area / kFourPi * g * unit.element_gain / (r_i * r_r);
        }
    }
    return sum;
}

ReceivedPower total_power(const RoadScenario& s, const std::vector<RisUnit>& units,
                          RisMode mode, double vehicle_x, AmplitudeBreakdown* breakdown) {
    check_vehicle_x(s, vehicle_x);
    const Vec3 vehicle = s.vehicle_position(vehicle_x);

    double los = 0.0;
    for (const BaseStation& bs : s.base_stations) {
        los += std::sqrt(bs.gain * s.vehicle_gain) / distance(bs.position, vehicle);
    }
    los *= s.wavelength / kFourPi;

    if (breakdown) {
        breakdown->los_amplitude = los;
        breakdown->ris_terms.assign(s.base_stations.size(),
                                    std::vector<RisLinkTerm>(units.size()));
    }

    double amplitude = los;
    for (std::size_t k = 0; k < s.base_stations.size(); ++k) {
        const BaseStation& bs = s.base_stations[k];
        const double g = std::sqrt(bs.gain * s.vehicle_gain);
        for (std::size_t n = 0; n < units.size(); ++n) {
            const RisUnit& unit = units[n];
            const double r_i = distance(bs.position, unit.center);
            const double r_r = distance(unit.center, vehicle);
            const double a_min = critical_area(r_i, r_r, s.wavelength);
            // Mirror-like reflection only applies in beamforming mode once
            // the surface reaches the critical size for this specific link;
            // focusing always uses the area-scaled term.
            const int beta =
                mode == RisMode::beamforming ? link_beta(unit.area, a_min) : 0;
            const double term =
                beta == 1
                    ? s.wavelength / kFourPi * g * unit.element_gain / (r_i + r_r)
                    : unit.area / kFourPi * g * unit.element_gain / (r_i * r_r);
            amplitude += term;
            if (breakdown) breakdown->ris_terms[k][n] = RisLinkTerm{term, beta, a_min};
        }
    }
    return make_received_power(amplitude * amplitude);
}

double avg_power(const RoadScenario& s, const std::vector<RisUnit>& units, RisMode mode) {
    const std::vector<double> grid = vehicle_grid(s);
    if (grid.empty()) throw scenario_error("vehicle grid is empty");
    double sum = 0.0;
    for (double x : grid) sum += total_power(s, units, mode, x).linear;
    return sum / static_cast<double>(grid.size());
}

CappedPower power_cap_check(const ReceivedPower& p) {
    CappedPower c;
    c.raw = p;
    c.capped = p.linear > 1.0;
    c.clamped_linear = c.capped ? 1.0 : p.linear;
    return c;
}

}  // namespace risplace
