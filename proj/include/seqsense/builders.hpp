// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "seqsense/ancilla_state.hpp"

namespace seqsense {

// 2x2 record state of the single-measurement protocol, rows ordered by
// Hamming index k = (a+1)/2 so that V/transfer machinery applies unchanged:
//   rho[a,a'] = 1/2 exp(-(a-a')^2|alpha|^2/2) exp(-i(a-a')N Im(alpha conj(beta)))
AncillaState build_single_rho(const ProtocolSpec& spec);

// (N+1)-dimensional sequential record state (constant schedule).
AncillaState build_seq_rho(const ProtocolSpec& spec);

// (N+1)^2-dimensional alternating-quadrature record state. Entry phase:
//   Phi = 2n|a|[b1(ki'-ki) + b2(kr-kr')]
//       + |a|^2 [4(ki kr' - ki' kr) + (2Nr-1)(ki'-ki) - (2Ni-1)(kr'-kr)],
// n = Nr+Ni; the |a|^2-linear coefficients carry the per-branch gauge
// (one e^{-i|a|^2} per 1-bit on a real-axis round, e^{+i|a|^2} on an
// imaginary-axis round) that makes the N=1, beta=0 fixture hold entrywise.
AncillaState build_two_param_rho(const ProtocolSpec& spec);

// Unbalanced (n_re, n_im) variant used for round-prefix analyses; n_im may be 0.
AncillaState build_two_param_prefix_rho(int n_re, int n_im, Complex beta, double alpha_mag);

// Prefix of any protocol after `n` rounds (n = 1..total_rounds()).
AncillaState build_prefix_rho(const ProtocolSpec& spec, int n);

// Analytic derivative of a built state with respect to one quadrature of beta.
// Quadratures the state is insensitive to yield the zero matrix.
StateDerivative d_rho(const AncillaState& state, Param param);

// Closed-form QFI of the joint record+oscillator pure state:
//   SeqOneParam, constant |a|:   4N^3|a|^2 + 4N^2
//   SingleMeasurement:           4N^2 + 4N^2|a|^2
//   general schedule:            4N^2 (1 + sum_n |a_n|^2)
double joint_qfi_closed_form(ProtocolKind kind, int rounds, const std::vector<Complex>& schedule);

}  // namespace seqsense
