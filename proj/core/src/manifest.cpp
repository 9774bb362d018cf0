#include "nbvb/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace nbvb {

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["command"] = command;
  // params are already a serialized object: embed, don't double-encode
  j["params"] = nlohmann::json::parse(params_json.empty() ? "{}" : params_json);
  j["outputs"] = outputs;
  j["wall_ms"] = wall_ms;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("manifest: invalid JSON: ") + e.what());
  }
  RunManifest m;
  try {
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.params_json = j.at("params").dump();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.wall_ms = j.at("wall_ms").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("manifest: missing or mistyped field: ") + e.what());
  }
  return m;
}

void RunManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("manifest: cannot open " + path + " for writing");
  out << to_json();
  if (!out) throw std::runtime_error("manifest: write failed for " + path);
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("manifest: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

}  // namespace nbvb
