#include "cavity_tools/commands.hpp"

#include "cavity/export.hpp"
#include "json.hpp"

namespace cavity::tools {

std::string manifest_json(const RunManifest& m) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["subcommand"] = m.subcommand;
  doc["spec_path"] = m.spec_path.empty() ? json(nullptr) : json(m.spec_path.string());
  doc["spec"] = m.resolved_spec.empty() ? json(nullptr) : json::parse(m.resolved_spec);
  json flags = json::object();
  for (const auto& [k, v] : m.flags) flags[k] = v;
  doc["flags"] = flags;
  json outputs = json::array();
  for (const auto& p : m.outputs) outputs.push_back(p.string());
  doc["outputs"] = outputs;
  doc["wall_time_s"] = m.wall_time;
  doc["solver"] = {{"rcond", m.rcond}, {"system_size", m.system_size}, {"warnings", m.warnings}};
  json results = json::object();
  for (const auto& [k, v] : m.results) results[k] = v;
  doc["results"] = results;
  return doc.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::filesystem::path& out_dir) {
  write_file_atomic(out_dir / "manifest.json", manifest_json(m));
}

}  // namespace cavity::tools
