// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "seqsense/core_math.hpp"
#include "seqsense/protocol.hpp"

namespace seqsense {

enum class Param { Beta1, Beta2 };

// Reduced density matrix of the measurement record, indexed by Hamming weight
// (scalar k for one-parameter kinds, row-major (k_r, k_i) for SeqTwoParam).
struct AncillaState {
  Eigen::MatrixXcd entries;
  HammingIndex index;    // n_im == 0 for one-parameter kinds
  ProtocolSpec spec;

  int dim() const { return static_cast<int>(entries.rows()); }

  // Throws numerical_error if Hermiticity/trace/PSD invariants fail.
  void validate(bool check_psd = false) const;
};

// Derivative of the reduced state with respect to one signal quadrature.
// Traceless and Hermitian by construction.
struct StateDerivative {
  Eigen::MatrixXcd entries;
  Param param = Param::Beta1;
};

}  // namespace seqsense
