// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "seqsense/core_math.hpp"

namespace seqsense {

enum class ProtocolKind {
  SingleMeasurement,  // N signal displacements, one terminal coupling + measurement
  SeqOneParam,        // N rounds of (signal, coupling kick, measurement)
  SeqTwoParam,        // 2N rounds, kick phase alternating by 90 degrees
};

// Sign convention used throughout: measurement outcome bit 1 kicks the
// oscillator by -alpha_n, bit 0 by +alpha_n, and Hamming weights count 1-bits.
// With this choice the one-parameter reduced state is
//   rho[k,k'] = sqrt(g_k g_k') exp(-2(k-k')^2|a|^2) exp(-2iN(k-k') Im(a conj(b)))
// and a real (imaginary) kick is sensitive to Im(beta) (Re(beta)) only.
struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::SeqOneParam;
  int rounds = 1;                  // N; per quadrature for SeqTwoParam
  Complex beta{0.0, 0.0};          // signal displacement per round
  std::vector<Complex> schedule;   // per-round coupling displacements alpha_n

  int total_rounds() const {
    return kind == ProtocolKind::SeqTwoParam ? 2 * rounds : rounds;
  }
  // SingleMeasurement has one coupling kick; sequential kinds kick every round.
  int kick_count() const {
    return kind == ProtocolKind::SingleMeasurement ? 1 : total_rounds();
  }
};

// Factories validate invariants (finite entries, schedule shape) and throw
// std::invalid_argument on violation.
ProtocolSpec make_single_spec(int rounds, Complex beta, Complex alpha);
ProtocolSpec make_seq_spec(int rounds, Complex beta, Complex alpha);
// Schedule alternates alpha, i*alpha, ...: odd rounds probe along the real
// axis, even rounds along the imaginary axis. alpha_mag must be > 0.
ProtocolSpec make_two_param_spec(int rounds_per_quadrature, Complex beta, double alpha_mag);

void validate_spec(const ProtocolSpec& spec);

}  // namespace seqsense
