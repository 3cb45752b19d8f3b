#pragma once

// Built-in verification suites: each reproduces one acceptance check with
// pinned tolerances and records what it measured.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgh/serialize.hpp"

namespace dgh::verify {

struct Options {
  std::optional<ReducedParams> r;
  std::optional<double> C3;
  std::optional<int> count;
  std::uint64_t seed = 20240917;
};

struct Result {
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  json measured;
};

const std::vector<std::string>& suite_names();
Result run(const std::string& name, const Options& opt = {});

}  // namespace dgh::verify
