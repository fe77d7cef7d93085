#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace risplace {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Euclidean distance between two points, meters.
double distance(const Vec3& a, const Vec3& b);

struct BaseStation {
    Vec3 position;      // meters; x along the road, y across, z up
    double gain = 1.0;  // linear antenna gain
};

/// One reconfigurable reflecting surface: a square panel of side_length
/// meters standing beside the road, centered at `center`.
struct RisUnit {
    Vec3 center;
    double side_length = 0.0;   // m
    double area = 0.0;          // m^2, side_length^2
    double element_gain = 1.0;  // linear
};

/// Static description of the deployment: a straight road segment of length
/// length_d served by base stations on one side, with reflecting units
/// mounted on the opposite side and the receiver driving down the center.
///
/// Defaults model a 30 km highway at 28 GHz: two base stations at the road
/// ends, 3 m x 3 m units at 12 m height, unit antenna gains.
struct RoadScenario {
    double length_d = 30000.0;      // road length D, m
    double width_w = 10.0;          // road width W, m
    double wavelength = 0.0107;     // carrier wavelength, m (10.7 mm ~ 28 GHz)
    double vehicle_step = 10.0;     // receiver sampling grid spacing, m
    double min_spacing = 10.0;      // minimum spacing between placed units, m
    double ris_height = 12.0;       // unit center height z_I, m
    double ris_y = -5.0;            // unit lateral offset (opposite side from BSs), m
    double vehicle_height = 1.0;    // receiver antenna height z_V, m
    double vehicle_y = 0.0;         // receiver lateral position, m
    double vehicle_gain = 1.0;      // linear
    double ris_side_length = 3.0;   // default unit side L, m
    double ris_element_gain = 1.0;  // linear
    std::vector<BaseStation> base_stations;

    Vec3 vehicle_position(double vehicle_x) const;
    Vec3 ris_center(double ris_x) const;
};

/// Distances for one candidate unit location against one receiver location.
struct LinkGeometry {
    std::vector<double> incident;   // BS -> unit, one entry per base station, m
    double reflected = 0.0;         // unit -> receiver, m
    std::vector<double> los;        // BS -> receiver, one entry per base station, m
};

class scenario_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The built-in default deployment described above.
RoadScenario default_scenario();

/// Parse a scenario from a JSON document. Every key is optional and falls
/// back to the defaults; unknown keys and malformed values are rejected with
/// the offending key path in the message. Recognized keys:
///   length_D, width_W, wavelength, vehicle_step, min_spacing,
///   ris_height, ris_y, vehicle_height, vehicle_y, vehicle_gain,
///   ris: {side_length, element_gain},
///   base_stations: [{x, y, z, gain}, ...]
/// Omitted ris_y / base_stations derive from width_W (units at -W/2, base
/// stations at +W/2 at the two road ends).
RoadScenario load_scenario(const std::string& json_text);
RoadScenario load_scenario_file(const std::string& path);

/// Check scenario invariants (positive lengths/gains, stations on the road,
/// spacing at least one side length, mounting height clears the ground).
/// Throws scenario_error with an "invariant violation: ..." message.
void validate(const RoadScenario& s);

/// Materialize a unit at road coordinate x with the scenario's default side
/// length, or an explicit one. Rejects panels that would touch the ground.
RisUnit make_ris_unit(const RoadScenario& s, double ris_x);
RisUnit make_ris_unit(const RoadScenario& s, double ris_x, double side_length);

/// All incident/reflected/direct path lengths for (unit at ris_x, receiver
/// at vehicle_x). Both coordinates must lie within [0, length_d].
LinkGeometry link_geometry(const RoadScenario& s, double ris_x, double vehicle_x);

/// Receiver sampling positions {0, step, 2*step, ...} up to and including
/// the largest multiple of step that fits in [0, length_d]. Symmetric about
/// the road midpoint whenever length_d is a multiple of step.
std::vector<double> vehicle_grid(const RoadScenario& s);

/// Canonical JSON form of the resolved configuration (all keys explicit).
std::string canonical_config(const RoadScenario& s);

/// Stable content hash of the resolved configuration ("fnv1a64:<hex>").
std::string scenario_fingerprint(const RoadScenario& s);

}  // namespace risplace
