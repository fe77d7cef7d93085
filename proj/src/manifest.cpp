#include "risplace/manifest.hpp"

#include <fstream>

namespace risplace {

nlohmann::ordered_json to_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["scenario_fingerprint"] = manifest.scenario_fingerprint;
    j["tool_version"] = manifest.tool_version;
    j["resolved_config"] = manifest.resolved_config;
    j["outputs"] = manifest.outputs;
    return j;
}

void write_manifest(const RunManifest& manifest, const std::string& output_path) {
    const std::string path = output_path + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scenario_error("cannot write file: " + path);
    out << to_json(manifest).dump(2) << '\n';
}

}  // namespace risplace
