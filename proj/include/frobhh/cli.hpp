#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "frobhh/verify.hpp"

namespace frobhh {

using Json = nlohmann::ordered_json;

struct Window {
  int lo = 0, hi = 0;
};
Window parse_window(const std::string& text);  // "lo:hi", lo <= hi

struct JobConfig {
  std::string command;  // info | cohomology | eval | verify
  Json input;           // {"field": ..., "algebra": {...}}
  std::optional<Window> window;
  std::optional<Window> bar_window;
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 42;
  bool json = false;
  std::string expr;
  bool preset_resolution = false;
};

// "Q", "F5", "GF(4)", "F_9" or {"p": 2, "modulus": [1, 1, 1]}.
FieldSpec parse_field(const Json& j);

// Parses a JSON document; syntax errors report line and column.
Json parse_input(const std::string& text, const std::string& name);

// Exit codes: 0 ok, 1 validation failure, 2 input error, 3 budget exceeded.
int exit_code_for(ErrorKind kind);

struct JobResult {
  int exit_code = 0;
  Json report;       // always filled, also on error ({"error": ...})
  std::string text;  // human-readable rendering
};

JobResult run_job(const JobConfig& cfg);

}  // namespace frobhh
