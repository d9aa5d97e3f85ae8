// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "seqsense/cli/config.hpp"

namespace seqsense::cli {

struct RunOptions {
  std::string experiment;       // qfi-sweep, scaling-map, two-param-compare,
                                // cfi-saturation, crb-map, decoherence, validate, sample
  Config config;
  std::string out_path;         // empty: stdout
  std::string format = "csv";   // csv | json
  int workers = 1;
  std::uint64_t seed = 1;
  bool full_scale = false;
};

// Exit codes: 0 success, 1 validation failure, 2 config error, 3 resource guard.
int run(const RunOptions& options);

}  // namespace seqsense::cli
