// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqsense/noise.hpp"
#include "seqsense/protocol.hpp"

namespace seqsense::oracle {

// Sequentially samples measurement records. Permutation invariance makes the
// exact record-prefix probability a function of the prefix Hamming weights
// only, so each round draws from precomputed prefix weight distributions
// (exact for the noiseless model; the Hamming-symmetric approximation is used
// when a noise model is supplied). Bit r-1 of a record is round r's outcome.
// Deterministic for a fixed seed: uniforms are (x >> 11) * 2^-53 from
// mt19937_64.
std::vector<std::uint32_t> sample_trajectories(const ProtocolSpec& spec,
                                               const std::optional<NoiseModel>& noise,
                                               std::uint64_t seed, int count);

// Histogram of record weights (one-parameter: index k; two-parameter:
// linear (k_r, k_i) index), normalized by count.
std::vector<double> weight_histogram(const ProtocolSpec& spec,
                                     const std::vector<std::uint32_t>& records);

}  // namespace seqsense::oracle
