#pragma once

#include <vector>

#include "risplace/scene.hpp"

namespace risplace {

/// Reflection behavior of the surfaces.
///  - focusing: every unit concentrates power on the receiver; its
///    contribution scales with the surface area (near-field lens behavior).
///  - beamforming: a unit steers a beam only when its area reaches the
///    critical area for the link; above threshold it behaves like a mirror
///    (plate-scattering), below it falls back to the area-scaled term.
enum class RisMode { focusing, beamforming };

const char* to_string(RisMode m);
RisMode parse_mode(const std::string& name);

struct ReceivedPower {
    double linear = 0.0;  // normalized linear power
    double db = 0.0;      // 10*log10(linear); -inf when linear == 0
};

ReceivedPower make_received_power(double linear);

/// Per-(base station, unit) contribution of the reflected field.
struct RisLinkTerm {
    double amplitude = 0.0;      // nonnegative field amplitude
    int beta = 0;                // 1 = mirror-like (specular), 0 = area-scaled (diffuse)
    double critical_area = 0.0;  // m^2, crossover area for this link
};

struct AmplitudeBreakdown {
    double los_amplitude = 0.0;
    // indexed [base station][unit]
    std::vector<std::vector<RisLinkTerm>> ris_terms;
};

/// Direct-path field amplitude summed over base stations:
///   (lambda / 4*pi) * sum_k sqrt(G_B^k * G_V) / r_l^k
double los_amplitude(const RoadScenario& s, double vehicle_x);

/// Crossover surface area separating mirror-like from area-scaled
/// reflection: a_min = r_i * r_r * lambda / (r_i + r_r). Tends to
/// r_i * lambda when the reflected leg dominates.
double critical_area(double r_incident, double r_reflected, double wavelength);

/// 1 when the surface is at least critically sized for the link, else 0.
int link_beta(double area, double threshold_area);

/// Mirror-like reflected amplitude over all (base station, unit) pairs:
///   (lambda / 4*pi) * sum sqrt(G_B G_V) * G_I / (r_i + r_r)
double specular_amplitude(const RoadScenario& s, const std::vector<RisUnit>& units,
                          double vehicle_x);

/// Area-scaled reflected amplitude over all pairs:
///   (A / 4*pi) * sum sqrt(G_B G_V) * G_I / (r_i * r_r)
double diffuse_amplitude(const RoadScenario& s, const std::vector<RisUnit>& units,
                         double vehicle_x);

/// Received power at one receiver position. All path phases are taken as
/// aligned, so amplitudes add as nonnegative reals and power is the squared
/// sum. In beamforming mode each (base station, unit) link independently
/// uses the mirror-like term when its area clears the link's critical area
/// and the area-scaled term otherwise; focusing mode always uses the
/// area-scaled term.
ReceivedPower total_power(const RoadScenario& s, const std::vector<RisUnit>& units,
                          RisMode mode, double vehicle_x,
                          AmplitudeBreakdown* breakdown = nullptr);

/// Arithmetic mean of linear received power over the vehicle grid.
double avg_power(const RoadScenario& s, const std::vector<RisUnit>& units, RisMode mode);

/// Normalized power must not exceed 1; values above it are physically
/// meaningless and get flagged, never silently altered.
struct CappedPower {
    ReceivedPower raw;
    bool capped = false;
    double clamped_linear = 0.0;  // min(raw.linear, 1.0)
};

CappedPower power_cap_check(const ReceivedPower& p);

}  // namespace risplace
