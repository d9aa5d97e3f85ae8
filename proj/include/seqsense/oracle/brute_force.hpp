// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "seqsense/ancilla_state.hpp"

namespace seqsense::oracle {

// Exhaustive noiseless reference, sharing nothing with the Dicke fast path
// beyond Complex and coherent_overlap. Branch bit r-1 is round r's outcome;
// bit 1 kicks by -alpha_n. Two-parameter branches carry the per-bit gauge
// (e^{-i|a|^2} per 1-bit on a real-axis round, e^{+i|a|^2} imaginary-axis).
struct BruteForceResult {
  ProtocolSpec spec;
  int n_bits = 0;
  std::vector<Complex> labels;        // final oscillator label per branch
  std::vector<Complex> amplitudes;    // 2^{-R/2} * gauge per branch
  Eigen::MatrixXcd record_matrix;     // 2^R x 2^R reduced record matrix
  AncillaState grouped;               // Hamming-grouped Dicke-basis state
  std::vector<double> z_distribution; // measurement-basis weights, Hamming-grouped
  double grouping_deviation = 0.0;    // max in-group entry spread (should be ~0)
};

BruteForceResult brute_force_seq(const ProtocolSpec& spec);

// Reindex a record matrix by a permutation of the rounds (invariance check).
Eigen::MatrixXcd permute_record_qubits(const Eigen::MatrixXcd& m,
                                       const std::vector<int>& perm);

}  // namespace seqsense::oracle
