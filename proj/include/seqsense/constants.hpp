// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace seqsense {

// Centralized tolerance constants.
inline constexpr double EPS_NORM = 1e-12;   // Hermiticity / trace / normalization
inline constexpr double EPS_EIG = 1e-12;    // eigenvalue-pair cutoff p_j + p_k for Fisher sums
inline constexpr double EPS_PSD = -1e-10;   // most-negative eigenvalue accepted before clamping

// Density-matrix entries whose magnitude underflows this bound are materialized as 0.
inline constexpr double ENTRY_UNDERFLOW = 1e-300;

// Probabilities below -PROB_FAIL trigger a numerical-failure error; negatives
// above it are clamped to zero.
inline constexpr double PROB_FAIL = 1e-8;
inline constexpr double PROB_SKIP = 1e-14;  // terms excluded from CFI sums

// Hard resource guards.
inline constexpr int MAX_SEQ_ROUNDS = 2000;      // Dicke fast path
inline constexpr int MAX_BRANCH_ROUNDS = 22;     // 2^N branch enumeration
inline constexpr int MAX_BRANCH_MATRIX_ROUNDS = 12;  // 4^N pairwise assembly

}  // namespace seqsense
