#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "risplace/scene.hpp"

namespace risplace {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one tool invocation, written next to every generated file so a
/// run can be reproduced exactly. Contains no timestamps or host details:
/// identical inputs produce byte-identical manifests.
struct RunManifest {
    std::string command;                 // subcommand plus arguments, space-joined
    std::string scenario_fingerprint;
    std::string tool_version = kToolVersion;
    nlohmann::ordered_json resolved_config;
    std::vector<std::string> outputs;    // paths written by this run
};

nlohmann::ordered_json to_json(const RunManifest& manifest);

/// Writes `<output_path>.manifest.json`.
void write_manifest(const RunManifest& manifest, const std::string& output_path);

}  // namespace risplace
