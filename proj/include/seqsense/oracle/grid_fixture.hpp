// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "seqsense/ancilla_state.hpp"

namespace seqsense::oracle {

// N = 1, beta = 0 two-parameter state used as a verification fixture. At
// |a| = sqrt(n pi) the two kick displacements commute (coefficient
// 2 sin(|a|^2) of the commutator vanishes) and the 4x4 matrix collapses to
// the x = e^{-2 n pi} pattern with sign (-1)^n on the single-step entries.
struct GridStateFixture {
  AncillaState state;
  double alpha_mag = 0.0;
  double commutator_coefficient = 0.0;  // 2 sin(|a|^2)
  double max_pattern_deviation = 0.0;   // vs the closed-form 4x4 matrix
};

// Closed-form 4x4 reference for the N = 1, beta = 0 state (independent of the
// builder; row-major (k_r, k_i) with k_r outer).
Eigen::Matrix4cd n1_reference_matrix(double alpha_mag);

GridStateFixture grid_state_check(double alpha_mag);
GridStateFixture grid_state_fixture(int n);  // |a| = sqrt(n pi), n >= 1

// Spectral norm of [D(r), D(ir)] on a truncated Fock space; equals
// 2|sin(r^2)| up to truncation error.
double displacement_commutator_norm(int dim, double alpha_mag);

}  // namespace seqsense::oracle
