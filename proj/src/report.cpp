#include "kgr/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kgr {

bool RunReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string RunReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = {{"file", input_path}, {"digest", input_digest}};
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["instances"] = r.instances;
    e["max_residual"] = r.max_residual;
    e["pass"] = r.pass;
    if (!r.witness.empty()) e["witness"] = r.witness;
    j["results"].push_back(e);
  }
  j["pass"] = all_pass();
  if (include_timing) {
    nlohmann::ordered_json t;
    for (const auto& [phase, secs] : timing) t[phase] = secs;
    j["timing"] = t;
  }
  return j.dump(2);
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_digest(ss.str());
}

}  // namespace kgr
