// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "seqsense/ancilla_state.hpp"
#include "seqsense/fisher.hpp"
#include "seqsense/noise.hpp"

namespace seqsense {

// Exact branch-resolved noisy evolution under the folded loss channel.
// Per round: labels decay-and-accrue mu -> q mu + beta_d, then the coupling
// kick shifts by -/+ alpha_n (bit convention as in the noiseless model). The
// pair coherence factor for one round is the beam-splitter-dilation overlap
//   <sqrt(1-q^2) nu | sqrt(1-q^2) mu>
// of the round-start labels, which is the exact loss-channel factor with the
// deterministic displacement phases gauged away so the Gamma -> 0 limit is the
// noiseless model.
struct BranchEnsemble {
  ProtocolSpec spec;
  NoiseModel noise;
  int rounds = 0;
  std::vector<Complex> final_label;  // per branch, indexed by bitstring
  std::vector<Complex> gauge;        // unit-modulus per-branch factor

  std::vector<Complex> label_trajectory(std::uint32_t bits) const;  // rounds+1 labels
  Complex pair_entry(std::uint32_t b, std::uint32_t bp) const;      // includes 2^-R weight
  Eigen::MatrixXcd record_matrix() const;   // guarded by MAX_BRANCH_MATRIX_ROUNDS
  // Measurement-basis record distribution grouped by Hamming weight(s).
  std::vector<double> outcome_weights() const;
  HammingIndex weight_index() const;
};

BranchEnsemble evolve_noisy_branches(const ProtocolSpec& spec, const NoiseModel& noise);

// Hamming-compressed noisy state: each weight class evolves along a uniform
// representative kick trajectory ( (N-2k)/N alpha per round ), making every
// per-round decay factor a coherent-Gram kernel, so the result is Hermitian,
// trace-1 and PSD by construction. Gamma = 0 delegates to the noiseless
// builders bitwise.
AncillaState symmetric_noisy_approx(const ProtocolSpec& spec, const NoiseModel& noise);

// Prefix variant (first n rounds), used by crb_min_over_rounds.
AncillaState symmetric_noisy_prefix(const ProtocolSpec& spec, const NoiseModel& noise, int n);

// Noisy CFI via central finite differences in beta (h = 1e-5) with a
// step-halving consistency pass; analytic derivatives are not propagated
// through the decay factors.
double noisy_cfi_scalar_fd(const ProtocolSpec& spec, const NoiseModel& noise, int n,
                           Param param, const Eigen::MatrixXcd& v,
                           double h = 1e-5);
FisherReport noisy_cfi_matrix_fd(const ProtocolSpec& spec, const NoiseModel& noise, int n,
                                 const Eigen::MatrixXcd& v_re, const Eigen::MatrixXcd& v_im,
                                 double h = 1e-5);

// Single-measurement protocol under noise, n accumulation rounds and one
// terminal kick per quadrature: CRB = 1/F1 + 1/F2. Pure loss uses the exact
// coherent closed form; gamma_d > 0 routes through the truncated-Fock solver
// (a dephased oscillator is no longer a coherent state).
double single_measurement_noisy_crb(Complex beta, double alpha_mag, const NoiseModel& noise,
                                    int n);
std::vector<double> single_measurement_noisy_crb_series(Complex beta, double alpha_mag,
                                                        const NoiseModel& noise, int n_max);

// Full decoherence comparison: per prefix round, interrogation time, the
// sequential CFI CRB (per-round and running minimum) and the
// single-measurement CRB measured at that time only.
struct NoisyCrbCurves {
  std::vector<double> time;
  std::vector<double> seq_crb;
  std::vector<double> seq_running_min;
  std::vector<double> single_crb;
};

NoisyCrbCurves noisy_crb_curve(const ProtocolSpec& spec, const NoiseModel& noise,
                               int rounds_max);

}  // namespace seqsense
