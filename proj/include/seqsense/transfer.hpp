// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "seqsense/core_math.hpp"

namespace seqsense {

// V[k, j] = <weight-j Dicke state of the measurement basis | weight-k Dicke
// state of the coupling basis>, built from the single-qubit overlap matrix
// u[z][x] = <z|x> by a Pascal-style recurrence over the qubit count. At N=1,
// V = u^T. Unitary to 1e-10 through N = 500.
Eigen::MatrixXcd transfer_matrix(int N, const Eigen::Matrix2cd& u);

// Overlaps between the computational basis {down, up} and the coupling basis
// {-,+} with |down> = (|-> + |+>)/sqrt(2): u = [[1,1],[-1,1]]/sqrt(2),
// i.e. exp(i pi sigma_y / 4). Index 1 is "up"/"+".
Eigen::Matrix2cd computational_basis_unitary();

}  // namespace seqsense
