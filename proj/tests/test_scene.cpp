#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "risplace/scene.hpp"

using namespace risplace;

TEST_CASE("default scenario models the built-in highway deployment") {
    const RoadScenario s = default_scenario();
    CHECK(s.length_d == 30000.0);
    CHECK(s.width_w == 10.0);
    CHECK(s.wavelength == 0.0107);
    CHECK(s.vehicle_step == 10.0);
    CHECK(s.min_spacing == 10.0);
    CHECK(s.ris_height == 12.0);
    CHECK(s.ris_y == -5.0);
    CHECK(s.vehicle_height == 1.0);
    CHECK(s.vehicle_y == 0.0);
    CHECK(s.vehicle_gain == 1.0);
    CHECK(s.ris_side_length == 3.0);
    CHECK(s.ris_element_gain == 1.0);

    REQUIRE(s.base_stations.size() == 2);
    CHECK(s.base_stations[0].position.x == 0.0);
    CHECK(s.base_stations[1].position.x == 30000.0);
    for (const BaseStation& bs : s.base_stations) {
        CHECK(bs.position.y == 5.0);
        CHECK(bs.position.z == 1.5);
        CHECK(bs.gain == 1.0);
    }
    CHECK_NOTHROW(validate(s));
}

TEST_CASE("vehicle and unit positions sit on their respective road sides") {
    const RoadScenario s = default_scenario();
    const Vec3 v = s.vehicle_position(1234.0);
    CHECK(v.x == 1234.0);
    CHECK(v.y == 0.0);
    CHECK(v.z == 1.0);
    const Vec3 c = s.ris_center(500.0);
    CHECK(c.x == 500.0);
    CHECK(c.y == -5.0);
    CHECK(c.z == 12.0);
}

TEST_CASE("distance computes Euclidean length") {
    CHECK(distance({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(distance({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
    // Station at one road end to a unit center 839 m down the road.
    const double d = distance({0, 5, 1.5}, {839, -5, 12});
    CHECK(d == doctest::Approx(839.1252886190476).epsilon(1e-12));
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> coord(-1e4, 1e4);
    for (int i = 0; i < 200; ++i) {
        const Vec3 a{coord(rng), coord(rng), coord(rng)};
        const Vec3 b{coord(rng), coord(rng), coord(rng)};
        const Vec3 c{coord(rng), coord(rng), coord(rng)};
        CHECK(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-15));
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    }
}

TEST_CASE("empty config resolves to the default scenario") {
    const RoadScenario s = load_scenario("{}");
    CHECK(canonical_config(s) == canonical_config(default_scenario()));
    CHECK(scenario_fingerprint(s) == scenario_fingerprint(default_scenario()));
}

TEST_CASE("config keys override individual fields") {
    const RoadScenario s = load_scenario(R"({
        "length_D": 2000,
        "wavelength": 0.0107069,
        "vehicle_step": 5,
        "ris": {"side_length": 2.5, "element_gain": 3.0},
        "base_stations": [{"x": 0}, {"x": 2000, "y": 4, "z": 2, "gain": 1.5}]
    })");
    CHECK(s.length_d == 2000.0);
    CHECK(s.wavelength == 0.0107069);
    CHECK(s.vehicle_step == 5.0);
    CHECK(s.ris_side_length == 2.5);
    CHECK(s.ris_element_gain == 3.0);
    REQUIRE(s.base_stations.size() == 2);
    // Omitted station fields fall back: y to +W/2, z to 1.5, gain to 1.
    CHECK(s.base_stations[0].position.y == 5.0);
    CHECK(s.base_stations[0].position.z == 1.5);
    CHECK(s.base_stations[0].gain == 1.0);
    CHECK(s.base_stations[1].position.y == 4.0);
    CHECK(s.base_stations[1].position.z == 2.0);
    CHECK(s.base_stations[1].gain == 1.5);
}

TEST_CASE("omitted ris_y derives from the road width") {
    const RoadScenario s = load_scenario(R"({"width_W": 24})");
    CHECK(s.ris_y == -12.0);
    // An explicit ris_y wins over the derived value.
    const RoadScenario t = load_scenario(R"({"width_W": 24, "ris_y": -3})");
    CHECK(t.ris_y == -3.0);
}

TEST_CASE("omitted base stations default to the two road ends") {
    const RoadScenario s = load_scenario(R"({"length_D": 1000, "width_W": 8})");
    REQUIRE(s.base_stations.size() == 2);
    CHECK(s.base_stations[0].position.x == 0.0);
    CHECK(s.base_stations[1].position.x == 1000.0);
    CHECK(s.base_stations[0].position.y == 4.0);
    CHECK(s.base_stations[1].position.y == 4.0);
}

TEST_CASE("config rejection pinpoints the offending key") {
    CHECK_THROWS_WITH_AS(load_scenario(R"({"lenght_D": 10})"),
                         "unknown key: lenght_D", scenario_error);
    CHECK_THROWS_WITH_AS(load_scenario(R"({"ris": {"side": 3}})"),
                         "unknown key: ris.side", scenario_error);
    CHECK_THROWS_WITH_AS(load_scenario(R"({"base_stations": [{"x": 0, "power": 2}]})"),
                         "unknown key: base_stations[0].power", scenario_error);
    CHECK_THROWS_WITH_AS(load_scenario(R"({"wavelength": "big"})"),
                         "expected number for key: wavelength", scenario_error);
    CHECK_THROWS_WITH_AS(load_scenario(R"({"base_stations": [{"y": 5}]})"),
                         "missing key: base_stations[0].x", scenario_error);
    CHECK_THROWS_WITH_AS(load_scenario(R"({"ris": 3})"),
                         "expected object for key: ris", scenario_error);
    CHECK_THROWS_WITH_AS(load_scenario(R"({"base_stations": 3})"),
                         "expected array for key: base_stations", scenario_error);
    CHECK_THROWS_AS(load_scenario("not json"), scenario_error);
    try {
        load_scenario("[1, 2");
        FAIL("expected a parse failure");
    } catch (const scenario_error& e) {
        CHECK(std::string(e.what()).find("config parse error") == 0);
    }
}

TEST_CASE("load_scenario_file reports unreadable paths") {
    CHECK_THROWS_WITH_AS(load_scenario_file("/nonexistent/scenario.json"),
                         "cannot read config file: /nonexistent/scenario.json",
                         scenario_error);
}

TEST_CASE("validate rejects out-of-range fields with the field name") {
    RoadScenario s = default_scenario();
    s.length_d = 0.0;
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: length_D > 0", scenario_error);

    s = default_scenario();
    s.wavelength = -1.0;
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: wavelength > 0", scenario_error);

    s = default_scenario();
    s.wavelength = std::nan("");
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: wavelength finite",
                         scenario_error);

    s = default_scenario();
    s.min_spacing = 2.0;  // below the 3 m side length
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: min_spacing >= ris.side_length",
                         scenario_error);

    s = default_scenario();
    s.ris_height = 1.0;  // a 3 m panel centered at 1 m would touch the ground
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: ris_height >= ris.side_length / 2",
                         scenario_error);

    s = default_scenario();
    s.base_stations[1].position.x = 30001.0;
    CHECK_THROWS_WITH_AS(validate(s),
                         "invariant violation: base_stations[1].x within [0, length_D]",
                         scenario_error);

    s = default_scenario();
    s.base_stations.clear();
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: base_stations non-empty",
                         scenario_error);

    s = default_scenario();
    s.base_stations[0].gain = 0.0;
    CHECK_THROWS_WITH_AS(validate(s), "invariant violation: base_stations[0].gain > 0",
                         scenario_error);
}

TEST_CASE("make_ris_unit materializes the panel and guards ground clearance") {
    const RoadScenario s = default_scenario();
    const RisUnit u = make_ris_unit(s, 839.0);
    CHECK(u.center.x == 839.0);
    CHECK(u.center.y == -5.0);
    CHECK(u.center.z == 12.0);
    CHECK(u.side_length == 3.0);
    CHECK(u.area == 9.0);
    CHECK(u.element_gain == 1.0);

    const RisUnit big = make_ris_unit(s, 0.0, 24.0);  // 24 m panel at 12 m: just clears
    CHECK(big.area == 576.0);
    CHECK_THROWS_WITH_AS(make_ris_unit(s, 0.0, 24.1),
                         "invariant violation: ris_height >= side_length / 2",
                         scenario_error);
    CHECK_THROWS_WITH_AS(make_ris_unit(s, -1.0),
                         "invariant violation: ris_x within [0, length_D]", scenario_error);
    CHECK_THROWS_WITH_AS(make_ris_unit(s, 0.0, 0.0),
                         "invariant violation: side_length > 0", scenario_error);
}

TEST_CASE("link_geometry produces the three path families") {
    const RoadScenario s = default_scenario();
    const LinkGeometry g = link_geometry(s, 0.0, 0.0);
    REQUIRE(g.incident.size() == 2);
    REQUIRE(g.los.size() == 2);
    // Station (0,5,1.5) to unit (0,-5,12): sqrt(100 + 110.25) = 14.5 exactly.
    CHECK(g.incident[0] == doctest::Approx(14.5).epsilon(1e-12));
    // Unit (0,-5,12) to vehicle (0,0,1): sqrt(25 + 121).
    CHECK(g.reflected == doctest::Approx(12.083045973594572).epsilon(1e-12));
    // Station (0,5,1.5) to vehicle (0,0,1): sqrt(25 + 0.25).
    CHECK(g.los[0] == doctest::Approx(std::sqrt(25.25)).epsilon(1e-12));

    const LinkGeometry mid = link_geometry(s, 0.0, 15000.0);
    CHECK(mid.los[0] == doctest::Approx(15000.000841666642).epsilon(1e-12));

    CHECK_THROWS_AS(link_geometry(s, -1.0, 0.0), scenario_error);
    CHECK_THROWS_AS(link_geometry(s, 0.0, 30000.5), scenario_error);
}

TEST_CASE("link geometry is mirror symmetric on the symmetric scenario") {
    const RoadScenario s = default_scenario();
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> pos(0.0, 30000.0);
    for (int i = 0; i < 50; ++i) {
        const double rx = pos(rng);
        const double vx = pos(rng);
        const LinkGeometry a = link_geometry(s, rx, vx);
        const LinkGeometry b = link_geometry(s, 30000.0 - rx, 30000.0 - vx);
        CHECK(a.incident[0] == doctest::Approx(b.incident[1]).epsilon(1e-12));
        CHECK(a.incident[1] == doctest::Approx(b.incident[0]).epsilon(1e-12));
        CHECK(a.reflected == doctest::Approx(b.reflected).epsilon(1e-12));
    }
}

TEST_CASE("vehicle grid spans the whole road inclusively") {
    const RoadScenario s = default_scenario();
    const std::vector<double> grid = vehicle_grid(s);
    REQUIRE(grid.size() == 3001);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 30000.0);
    CHECK(grid[1] == 10.0);
    CHECK(grid[1500] == 15000.0);

    RoadScenario tiny = default_scenario();
    tiny.length_d = 10.0;
    CHECK(vehicle_grid(tiny) == std::vector<double>{0.0, 10.0});

    // A road length that is not a multiple of the step stops at the last
    // full step.
    tiny.length_d = 25.0;
    CHECK(vehicle_grid(tiny) == std::vector<double>{0.0, 10.0, 20.0});
}

TEST_CASE("vehicle grid size is floor(D/step)+1 across random scenarios") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> len(5.0, 5000.0);
    std::uniform_real_distribution<double> step(0.5, 50.0);
    for (int i = 0; i < 100; ++i) {
        RoadScenario s = default_scenario();
        s.length_d = len(rng);
        s.vehicle_step = step(rng);
        const std::vector<double> grid = vehicle_grid(s);
        REQUIRE(!grid.empty());
        CHECK(grid.front() == 0.0);
        CHECK(grid.back() <= s.length_d);
        CHECK(grid.back() + s.vehicle_step > s.length_d);
        for (std::size_t j = 1; j < grid.size(); ++j) {
            CHECK(grid[j] == doctest::Approx(static_cast<double>(j) * s.vehicle_step)
                                 .epsilon(1e-12));
        }
    }
}

TEST_CASE("canonical config is complete, sorted, and round-trips") {
    const RoadScenario s = default_scenario();
    const std::string text = canonical_config(s);
    const nlohmann::json doc = nlohmann::json::parse(text);
    for (const char* key :
         {"length_D", "width_W", "wavelength", "vehicle_step", "min_spacing", "ris_height",
          "ris_y", "vehicle_height", "vehicle_y", "vehicle_gain", "ris", "base_stations"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc["ris"]["side_length"] == 3.0);
    CHECK(doc["base_stations"].size() == 2);
    // Feeding the canonical form back through the loader reproduces it.
    CHECK(canonical_config(load_scenario(text)) == text);
}

TEST_CASE("scenario fingerprint is stable and content sensitive") {
    const RoadScenario s = default_scenario();
    const std::string fp = scenario_fingerprint(s);
    CHECK(fp.rfind("fnv1a64:", 0) == 0);
    CHECK(fp.size() == 8 + 16);
    for (std::size_t i = 8; i < fp.size(); ++i) {
        CHECK(std::isxdigit(static_cast<unsigned char>(fp[i])));
    }
    CHECK(scenario_fingerprint(default_scenario()) == fp);

    RoadScenario t = default_scenario();
    t.wavelength = 0.0107069;
    CHECK(scenario_fingerprint(t) != fp);
}
