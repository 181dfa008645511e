#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>

#include "liftzonoid/measures.hpp"

namespace liftzonoid::cli {

struct VerifyConfig {
  std::string suite;
  std::optional<Measure> measure;  // suite default when absent
  std::uint64_t seed = 0;
  std::size_t samples = 100'000;
  int directions = 64;
  int workers = 1;
};

// Runs one suite and returns
//   {"suite", "seed", "measure", "properties": [{name, max_error, tolerance, pass}], "pass"}.
// The report depends only on the configuration, never on the worker count.
// Throws Error(Input) for an unknown suite name.
nlohmann::json run_verify(const VerifyConfig& config);

}  // namespace liftzonoid::cli
