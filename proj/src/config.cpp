#include "rufst/config.hpp"

#include <fstream>

#include <json.hpp>

namespace rufst {

namespace {

using nlohmann::json;

JobConfig from_json(const json& doc) {
  JobConfig cfg;
  try {
    if (doc.contains("A")) cfg.A = doc.at("A").get<double>();
    if (doc.contains("B")) cfg.B = doc.at("B").get<int>();
    if (doc.contains("size")) {
      cfg.n1 = doc.at("size").at(0).get<int>();
      cfg.n2 = doc.at("size").at(1).get<int>();
    }
    if (doc.contains("M")) cfg.M = doc.at("M").get<int>();
    if (doc.contains("K")) cfg.K = doc.at("K").get<int>();
    if (doc.contains("transform")) cfg.transform = doc.at("transform").get<std::string>();
    if (doc.contains("rotation_mode"))
      cfg.rotation_mode = doc.at("rotation_mode").get<std::string>();
    if (doc.contains("input")) cfg.input = doc.at("input").get<std::string>();
    if (doc.contains("out")) cfg.out = doc.at("out").get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("cap")) cfg.cap = doc.at("cap").get<std::int64_t>();
    if (doc.contains("suites")) cfg.suites = doc.at("suites").get<std::vector<std::string>>();
    if (doc.contains("break_check")) cfg.break_check = doc.at("break_check").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

}  // namespace

JobConfig JobConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config: malformed JSON in " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

JobConfig JobConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

void JobConfig::validate() const {
  if (!(A > 0.0)) throw ConfigError("config: field A must be positive");
  if (B < 1) throw ConfigError("config: field B must be >= 1");
  if (n1 < 3 || n2 < 3) throw ConfigError("config: field size must be at least 3x3");
  if (M < 1) throw ConfigError("config: field M must be >= 1");
  if (K < 1) throw ConfigError("config: field K must be >= 1");
  if (cap < 1) throw ConfigError("config: field cap must be >= 1");
  if (transform != "plain" && transform != "rotational") {
    throw ConfigError("config: field transform must be 'plain' or 'rotational'");
  }
  if (rotation_mode != "exact" && rotation_mode != "bilinear") {
    throw ConfigError("config: field rotation_mode must be 'exact' or 'bilinear'");
  }
}

FrameSpec JobConfig::frame_spec_full_cover() const {
  const int level = std::max(M, FrameSpec::full_cover_level(A, n1, n2));
  return FrameSpec{A, B, n1, n2, level};
}

TransformKind JobConfig::transform_kind() const {
  return transform == "plain" ? TransformKind::Plain : TransformKind::Rotational;
}

RotationMode JobConfig::mode() const {
  return rotation_mode == "exact" ? RotationMode::Exact : RotationMode::Bilinear;
}

}  // namespace rufst
