// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace seqsense {

// Thrown when a computation would exceed a hard size/branch guard.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a numerical routine produced an untrustworthy result
// (eigensolver failure, negative probability beyond tolerance, ...).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by the CLI config parser; message names the offending key/line.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace seqsense
