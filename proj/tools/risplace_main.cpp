#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "risplace/analysis.hpp"
#include "risplace/manifest.hpp"
#include "risplace/placement.hpp"
#include "risplace/propagation.hpp"
#include "risplace/scene.hpp"

namespace {

using namespace risplace;

struct CommonOptions {
    std::string scenario_path;
    std::string mode_name = "focusing";
    int n_units = 2;
    std::string out_path;
    std::optional<double> wavelength;
    long stride = 1;
};

RoadScenario resolve_scenario(const CommonOptions& opts) {
    RoadScenario s =
        opts.scenario_path.empty() ? default_scenario() : load_scenario_file(opts.scenario_path);
    if (opts.wavelength) {
        s.wavelength = *opts.wavelength;
        validate(s);
    }
    return s;
}

long parse_long(const std::string& text, const std::string& what) {
    long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw scenario_error("invalid " + what + ": " + text);
    }
    return value;
}

std::vector<long> parse_long_list(const std::string& text, const std::string& what) {
    std::vector<long> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        values.push_back(parse_long(item, what));
    }
    if (values.empty()) throw scenario_error("invalid " + what + ": " + text);
    return values;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t consumed = 0;
            const double v = std::stod(item, &consumed);
            if (consumed != item.size()) throw std::invalid_argument(item);
            values.push_back(v);
        } catch (const std::exception&) {
            throw scenario_error("invalid " + what + ": " + text);
        }
    }
    if (values.empty()) throw scenario_error("invalid " + what + ": " + text);
    return values;
}

/// Placement spec grammar: "" (no units), "optimize:N", "equidistant:N",
/// or an explicit comma-separated integer list.
std::vector<long> resolve_placement(const RoadScenario& s, RisMode mode,
                                    const std::string& spec, long stride) {
    if (spec.empty()) return {};
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string verb = spec.substr(0, colon);
        const long n = parse_long(spec.substr(colon + 1), "placement spec");
        if (n < 1) throw scenario_error("invalid placement spec: " + spec);
        if (verb == "optimize") {
            const double area = s.ris_side_length * s.ris_side_length;
            std::vector<long> positions =
                place_ris(s, static_cast<int>(n), mode, area, stride).positions;
            std::sort(positions.begin(), positions.end());
            return positions;
        }
        if (verb == "equidistant") {
            return equidistant_place(s.length_d, static_cast<int>(n));
        }
        throw scenario_error("invalid placement spec: " + spec);
    }
    return parse_long_list(spec, "placement spec");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scenario_error("cannot write file: " + path);
    out << content;
}

void emit_manifest(const std::string& command, const RoadScenario& s,
                   const std::vector<std::string>& outputs, const std::string& anchor_path) {
    RunManifest manifest;
    manifest.command = command;
    manifest.scenario_fingerprint = scenario_fingerprint(s);
    manifest.resolved_config = nlohmann::ordered_json::parse(canonical_config(s));
    manifest.outputs = outputs;
    write_manifest(manifest, anchor_path);
}

int cmd_optimize(const std::string& command, const CommonOptions& opts) {
    const RoadScenario s = resolve_scenario(opts);
    const RisMode mode = parse_mode(opts.mode_name);
    const double area = s.ris_side_length * s.ris_side_length;
    const PlacementResult result = place_ris(s, opts.n_units, mode, area, opts.stride);

    std::vector<long> sorted = result.positions;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        std::cout << (i ? " " : "") << sorted[i];
    }
    std::cout << '\n';

    if (!opts.out_path.empty()) {
        nlohmann::ordered_json j;
        j["mode"] = to_string(mode);
        j["positions"] = result.positions;  // selection order, paired with objectives
        j["objective_values"] = result.objective_values;
        j["avg_power_linear"] = result.avg_power_achieved;
        j["avg_power_db"] = make_received_power(result.avg_power_achieved).db;
        j["scenario_fingerprint"] = scenario_fingerprint(s);
        write_text_file(opts.out_path, j.dump(2) + "\n");
        emit_manifest(command, s, {opts.out_path}, opts.out_path);
    }
    return 0;
}

int cmd_sweep(const std::string& command, const CommonOptions& opts,
              const std::string& placement_spec) {
    const RoadScenario s = resolve_scenario(opts);
    const RisMode mode = parse_mode(opts.mode_name);
    const std::vector<long> placement = resolve_placement(s, mode, placement_spec, opts.stride);
    const PowerProfile profile = power_profile(s, placement, mode);
    std::ostringstream csv;
    write_profile_csv(profile, csv);
    write_text_file(opts.out_path, csv.str());
    emit_manifest(command, s, {opts.out_path}, opts.out_path);
    return 0;
}

int cmd_size_sweep(const std::string& command, const CommonOptions& opts,
                   const std::string& lengths_spec) {
    const RoadScenario s = resolve_scenario(opts);
    const RisMode mode = parse_mode(opts.mode_name);
    const std::vector<double> lengths = parse_double_list(lengths_spec, "lengths list");
    SizeSweepOptions sweep_options;
    sweep_options.stride = opts.stride;
    const SizeSweepGrid grid = size_sweep(s, mode, lengths, opts.n_units, sweep_options);
    std::ostringstream csv;
    write_size_sweep_csv(grid, csv);
    write_text_file(opts.out_path, csv.str());
    emit_manifest(command, s, {opts.out_path}, opts.out_path);
    return 0;
}

int cmd_compare(const std::string& command, const CommonOptions& opts) {
    const RoadScenario s = resolve_scenario(opts);
    const double area = s.ris_side_length * s.ris_side_length;
    const PowerProfile baseline = power_profile(s, {}, RisMode::focusing);

    nlohmann::ordered_json report;
    report["scenario_fingerprint"] = scenario_fingerprint(s);
    report["n_units"] = opts.n_units;
    {
        double mean = 0.0;
        double min_db = std::numeric_limits<double>::infinity();
        for (const ProfileSample& sample : baseline.samples) {
            mean += sample.power.db;
            min_db = std::min(min_db, sample.power.db);
        }
        mean /= static_cast<double>(baseline.samples.size());
        std::vector<double> xs;
        for (const ProfileSample& sample : baseline.samples) xs.push_back(sample.vehicle_x);
        const double target = (xs.front() + xs.back()) / 2.0;
        std::size_t mid = 0;
        double best_gap = std::abs(xs[0] - target);
        for (std::size_t j = 1; j < xs.size(); ++j) {
            if (std::abs(xs[j] - target) < best_gap) {
                best_gap = std::abs(xs[j] - target);
                mid = j;
            }
        }
        report["los_baseline"] = {{"midpoint_power_db", baseline.samples[mid].power.db},
                                  {"mean_power_db", mean},
                                  {"min_power_db", min_db}};
    }

    auto any_capped = [](const PowerProfile& profile) {
        for (const ProfileSample& sample : profile.samples) {
            if (sample.capped) return true;
        }
        return false;
    };
    const std::vector<long> equidistant = equidistant_place(s.length_d, opts.n_units);
    for (RisMode mode : {RisMode::focusing, RisMode::beamforming}) {
        const PowerProfile profile = power_profile(s, equidistant, mode);
        report[std::string("equidistant_") + to_string(mode)] = gain_summary_json(
            mode, equidistant, gain_over_los(profile, baseline), any_capped(profile));
    }
    for (RisMode mode : {RisMode::focusing, RisMode::beamforming}) {
        std::vector<long> positions =
            place_ris(s, opts.n_units, mode, area, opts.stride).positions;
        std::sort(positions.begin(), positions.end());
        const PowerProfile profile = power_profile(s, positions, mode);
        report[std::string("optimized_") + to_string(mode)] = gain_summary_json(
            mode, positions, gain_over_los(profile, baseline), any_capped(profile));
    }

    write_text_file(opts.out_path, report.dump(2) + "\n");
    emit_manifest(command, s, {opts.out_path}, opts.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roadside reflector placement and received-power simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string placement_spec;
    std::string lengths_spec;

    auto add_common = [&opts](CLI::App* cmd, bool with_mode, bool with_n, bool out_required) {
        cmd->add_option("--scenario", opts.scenario_path, "Scenario config JSON file");
        if (with_mode) {
            cmd->add_option("--mode", opts.mode_name, "Surface mode: focusing|beamforming")
                ->capture_default_str();
        }
        if (with_n) {
            cmd->add_option("--n", opts.n_units, "Number of units to place")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        }
        auto* out = cmd->add_option("--out", opts.out_path, "Output file path");
        if (out_required) out->required();
        cmd->add_option("--wavelength", opts.wavelength, "Carrier wavelength override, m");
        cmd->add_option("--step", opts.stride, "Placement search stride, m")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    CLI::App* optimize = app.add_subcommand("optimize", "Place units and print coordinates");
    add_common(optimize, true, true, false);

    CLI::App* sweep = app.add_subcommand("sweep", "Received power along the road as CSV");
    add_common(sweep, true, false, true);
    sweep->add_option("--placement", placement_spec,
                      "\"optimize:N\", \"equidistant:N\", \"x1,x2,...\", or empty for no units");

    CLI::App* size_sweep_cmd =
        app.add_subcommand("size-sweep", "Received power across unit sizes as CSV");
    add_common(size_sweep_cmd, true, true, true);
    size_sweep_cmd->add_option("--lengths", lengths_spec, "Comma-separated side lengths, m")
        ->required();

    CLI::App* compare =
        app.add_subcommand("compare", "Gain summaries for baseline and optimized placements");
    add_common(compare, false, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) command += ' ';
        command += argv[i];
    }

    try {
        if (app.got_subcommand(optimize)) return cmd_optimize(command, opts);
        if (app.got_subcommand(sweep)) return cmd_sweep(command, opts, placement_spec);
        if (app.got_subcommand(size_sweep_cmd)) {
            return cmd_size_sweep(command, opts, lengths_spec);
        }
        if (app.got_subcommand(compare)) return cmd_compare(command, opts);
    } catch (const placement_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const scenario_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
