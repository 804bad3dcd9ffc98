#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rufst/frame.hpp"
#include "rufst/scattering.hpp"

namespace rufst {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One JSON document drives every subcommand; CLI flags override file values.
struct JobConfig {
  double A = 2.0;
  int B = 8;
  int n1 = 33;
  int n2 = 33;
  int M = 3;
  int K = 2;
  std::string transform = "rotational";
  std::string rotation_mode = "exact";
  std::string input;
  std::string out;
  std::uint64_t seed = 1;
  std::int64_t cap = kDefaultPathCap;
  std::vector<std::string> suites;  // empty = all verify suites
  std::string break_check;          // debug: sabotage one named verify check

  static JobConfig from_json_file(const std::filesystem::path& path);
  static JobConfig from_json_text(const std::string& text);

  void validate() const;

  /// Frame built exactly to level M (frame build / render).
  FrameSpec frame_spec() const { return FrameSpec{A, B, n1, n2, M}; }
  /// Frame built to the full-cover level (analyze needs the whole partition).
  FrameSpec frame_spec_full_cover() const;

  TransformKind transform_kind() const;
  RotationMode mode() const;
};

}  // namespace rufst
