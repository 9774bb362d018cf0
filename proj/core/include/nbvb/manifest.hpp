// Run manifests: every tool invocation records its resolved parameters and
// outputs as JSON next to the artifacts, and `rerun` replays a manifest.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nbvb {

struct RunManifest {
  std::string tool_version;
  std::string command;      // subcommand name: analyze/threshold/simulate/compare
  std::string params_json;  // resolved parameter object, serialized JSON
  std::vector<std::string> outputs;  // file names relative to the manifest
  std::int64_t wall_ms = 0;

  std::string to_json() const;                       // pretty, 2-space indent
  static RunManifest from_json(const std::string&);  // throws std::runtime_error

  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

}  // namespace nbvb
