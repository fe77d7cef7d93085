#include "risplace/scene.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace risplace {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw scenario_error("invariant violation: " + what);
}

void require_finite(double v, const std::string& name) {
    if (!std::isfinite(v)) fail(name + " finite");
}

double require_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw scenario_error("expected number for key: " + path);
    return v.get<double>();
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& prefix) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            throw scenario_error("unknown key: " + prefix + item.key());
        }
    }
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Vec3 RoadScenario::vehicle_position(double vehicle_x) const {
    return Vec3{vehicle_x, vehicle_y, vehicle_height};
}

Vec3 RoadScenario::ris_center(double ris_x) const {
    return Vec3{ris_x, ris_y, ris_height};
}

RoadScenario default_scenario() {
    RoadScenario s;
    s.base_stations = {
        BaseStation{Vec3{0.0, s.width_w / 2.0, 1.5}, 1.0},
        BaseStation{Vec3{s.length_d, s.width_w / 2.0, 1.5}, 1.0},
    };
    return s;
}

RoadScenario load_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw scenario_error(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw scenario_error("config must be a JSON object");

    static const std::set<std::string> top_keys = {
        "length_D",      "width_W",   "wavelength",     "vehicle_step",
        "min_spacing",   "ris_height", "ris_y",         "vehicle_height",
        "vehicle_y",     "vehicle_gain", "ris",         "base_stations",
    };
    reject_unknown_keys(doc, top_keys, "");

    RoadScenario s;
    auto scalar = [&doc](const char* key, double& field) {
        if (doc.contains(key)) field = require_number(doc.at(key), key);
    };
    scalar("length_D", s.length_d);
    scalar("width_W", s.width_w);
    scalar("wavelength", s.wavelength);
    scalar("vehicle_step", s.vehicle_step);
    scalar("min_spacing", s.min_spacing);
    scalar("ris_height", s.ris_height);
    scalar("vehicle_height", s.vehicle_height);
    scalar("vehicle_y", s.vehicle_y);
    scalar("vehicle_gain", s.vehicle_gain);

    if (doc.contains("ris_y")) {
        s.ris_y = require_number(doc.at("ris_y"), "ris_y");
    } else {
        s.ris_y = -s.width_w / 2.0;  // opposite side of the road from the stations
    }

    if (doc.contains("ris")) {
        const json& ris = doc.at("ris");
        if (!ris.is_object()) throw scenario_error("expected object for key: ris");
        static const std::set<std::string> ris_keys = {"side_length", "element_gain"};
        reject_unknown_keys(ris, ris_keys, "ris.");
        if (ris.contains("side_length")) {
            s.ris_side_length = require_number(ris.at("side_length"), "ris.side_length");
        }
        if (ris.contains("element_gain")) {
            s.ris_element_gain = require_number(ris.at("element_gain"), "ris.element_gain");
        }
    }

    if (doc.contains("base_stations")) {
        const json& stations = doc.at("base_stations");
        if (!stations.is_array()) {
            throw scenario_error("expected array for key: base_stations");
        }
        static const std::set<std::string> bs_keys = {"x", "y", "z", "gain"};
        for (std::size_t i = 0; i < stations.size(); ++i) {
            const std::string prefix = "base_stations[" + std::to_string(i) + "].";
            const json& bs = stations.at(i);
            if (!bs.is_object()) {
                throw scenario_error("expected object for key: base_stations[" +
                                     std::to_string(i) + "]");
            }
            reject_unknown_keys(bs, bs_keys, prefix);
            if (!bs.contains("x")) throw scenario_error("missing key: " + prefix + "x");
            BaseStation station;
            station.position.x = require_number(bs.at("x"), prefix + "x");
            station.position.y = bs.contains("y") ? require_number(bs.at("y"), prefix + "y")
                                                  : s.width_w / 2.0;
            station.position.z =
                bs.contains("z") ? require_number(bs.at("z"), prefix + "z") : 1.5;
            station.gain =
                bs.contains("gain") ? require_number(bs.at("gain"), prefix + "gain") : 1.0;
            s.base_stations.push_back(station);
        }
    } else {
        s.base_stations = {
            BaseStation{Vec3{0.0, s.width_w / 2.0, 1.5}, 1.0},
            BaseStation{Vec3{s.length_d, s.width_w / 2.0, 1.5}, 1.0},
        };
    }

    validate(s);
    return s;
}

RoadScenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scenario_error("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_scenario(buffer.str());
}

void validate(const RoadScenario& s) {
    require_finite(s.length_d, "length_D");
    require_finite(s.width_w, "width_W");
    require_finite(s.wavelength, "wavelength");
    require_finite(s.vehicle_step, "vehicle_step");
    require_finite(s.min_spacing, "min_spacing");
    require_finite(s.ris_height, "ris_height");
    require_finite(s.ris_y, "ris_y");
    require_finite(s.vehicle_height, "vehicle_height");
    require_finite(s.vehicle_y, "vehicle_y");
    require_finite(s.vehicle_gain, "vehicle_gain");
    require_finite(s.ris_side_length, "ris.side_length");
    require_finite(s.ris_element_gain, "ris.element_gain");

    if (!(s.length_d > 0)) fail("length_D > 0");
    if (!(s.width_w > 0)) fail("width_W > 0");
    if (!(s.wavelength > 0)) fail("wavelength > 0");
    if (!(s.vehicle_step > 0)) fail("vehicle_step > 0");
    if (!(s.min_spacing > 0)) fail("min_spacing > 0");
    if (!(s.vehicle_height >= 0)) fail("vehicle_height >= 0");
    if (!(s.vehicle_gain > 0)) fail("vehicle_gain > 0");
    if (!(s.ris_side_length > 0)) fail("ris.side_length > 0");
    if (!(s.ris_element_gain > 0)) fail("ris.element_gain > 0");
    if (!(s.min_spacing >= s.ris_side_length)) fail("min_spacing >= ris.side_length");
    if (!(s.ris_height >= s.ris_side_length / 2.0)) {
        fail("ris_height >= ris.side_length / 2");
    }
    if (s.base_stations.empty()) fail("base_stations non-empty");
    for (std::size_t i = 0; i < s.base_stations.size(); ++i) {
        const std::string prefix = "base_stations[" + std::to_string(i) + "]";
        const BaseStation& bs = s.base_stations[i];
        require_finite(bs.position.x, prefix + ".x");
        require_finite(bs.position.y, prefix + ".y");
        require_finite(bs.position.z, prefix + ".z");
        require_finite(bs.gain, prefix + ".gain");
        if (!(bs.gain > 0)) fail(prefix + ".gain > 0");
        if (!(bs.position.x >= 0 && bs.position.x <= s.length_d)) {
            fail(prefix + ".x within [0, length_D]");
        }
    }
}

RisUnit make_ris_unit(const RoadScenario& s, double ris_x) {
    return make_ris_unit(s, ris_x, s.ris_side_length);
}

RisUnit make_ris_unit(const RoadScenario& s, double ris_x, double side_length) {
    if (!(side_length > 0)) fail("side_length > 0");
    if (!(s.ris_height >= side_length / 2.0)) fail("ris_height >= side_length / 2");
    if (!(ris_x >= 0 && ris_x <= s.length_d)) fail("ris_x within [0, length_D]");
    RisUnit unit;
    unit.center = s.ris_center(ris_x);
    unit.side_length = side_length;
    unit.area = side_length * side_length;
    unit.element_gain = s.ris_element_gain;
    return unit;
}

LinkGeometry link_geometry(const RoadScenario& s, double ris_x, double vehicle_x) {
    if (!(ris_x >= 0 && ris_x <= s.length_d)) fail("ris_x within [0, length_D]");
    if (!(vehicle_x >= 0 && vehicle_x <= s.length_d)) fail("vehicle_x within [0, length_D]");
    const Vec3 center = s.ris_center(ris_x);
    const Vec3 vehicle = s.vehicle_position(vehicle_x);
    LinkGeometry g;
    g.incident.reserve(s.base_stations.size());
    g.los.reserve(s.base_stations.size());
    for (const BaseStation& bs : s.base_stations) {
        g.incident.push_back(distance(bs.position, center));
        g.los.push_back(distance(bs.position, vehicle));
    }
    g.reflected = distance(center, vehicle);
    return g;
}

std::vector<double> vehicle_grid(const RoadScenario& s) {
    long long n = static_cast<long long>(std::floor(s.length_d / s.vehicle_step));
    // Guard against floor() landing one off when D/step is an exact integer
    // that rounds poorly in floating point.
    while ((static_cast<double>(n) + 1.0) * s.vehicle_step <= s.length_d) ++n;
    while (n > 0 && static_cast<double>(n) * s.vehicle_step > s.length_d) --n;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (long long j = 0; j <= n; ++j) {
        grid.push_back(static_cast<double>(j) * s.vehicle_step);
    }
    return grid;
}

std::string canonical_config(const RoadScenario& s) {
    json j;  // plain json keeps object keys sorted
    j["length_D"] = s.length_d;
    j["width_W"] = s.width_w;
    j["wavelength"] = s.wavelength;
    j["vehicle_step"] = s.vehicle_step;
    j["min_spacing"] = s.min_spacing;
    j["ris_height"] = s.ris_height;
    j["ris_y"] = s.ris_y;
    j["vehicle_height"] = s.vehicle_height;
    j["vehicle_y"] = s.vehicle_y;
    j["vehicle_gain"] = s.vehicle_gain;
    j["ris"] = {{"side_length", s.ris_side_length}, {"element_gain", s.ris_element_gain}};
    j["base_stations"] = json::array();
    for (const BaseStation& bs : s.base_stations) {
        j["base_stations"].push_back({{"x", bs.position.x},
                                      {"y", bs.position.y},
                                      {"z", bs.position.z},
                                      {"gain", bs.gain}});
    }
    return j.dump();
}

std::string scenario_fingerprint(const RoadScenario& s) {
    const std::string canon = canonical_config(s);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64-bit offset basis
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;  // FNV-1a 64-bit prime
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace risplace
