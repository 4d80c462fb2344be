#pragma once

// Command bodies shared by the veemap executable and the acceptance runner.
// Each returns an exit code (0 pass, 1 fail, 2 refusal) and a JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "veemap/json_io.hpp"

namespace veemap::cli {

struct Outcome {
  int code = 0;
  Json report;
  std::string artifact;  // DOT for hull, SVG for orbit
};

/// VEEMAP_SEED if set and numeric, else 1.
std::uint64_t default_seed();

struct HullOptions {
  std::string regex;
  std::string dfa_file;
  std::string alphabet;  // comma separated; empty means inferred
  std::string separator = "#";
  bool pair = false;
  std::string right_regex;  // pair mode; empty means the left language
  std::string right_dfa_file;
  std::string left_names;  // comma separated; default appends _A
  std::string right_names;
  std::string inner_separator = "@";
  bool reverse_left = true;
  std::size_t cross_validate = 0;  // 0 skips
};

Outcome cmd_hull(const HullOptions& o);

enum class VerifyInput { element, pair_element, rule, pair_rule };

struct VerifyOptions {
  std::size_t max_len = 12;
  /// Bound for the embedding and faithfulness sweeps.
  std::size_t embed_len = 6;
};

Outcome cmd_verify(const Json& input, VerifyInput kind, const VerifyOptions& o);

struct RelatorOptions {
  std::string word;
  std::size_t orbits = 20;
  std::uint64_t seed = 1;
  std::size_t max_tiles = 8;
};

Outcome cmd_relator(const RelatorOptions& o);

Outcome cmd_bf(const std::vector<Json>& matrices);

Outcome cmd_mixing(const Json& matrix);

/// Applies the induced map of a V element (or 2V element when pair is set) to an orbit.
Outcome cmd_orbit(const Json& element, bool pair, const Json& orbit);

}  // namespace veemap::cli
