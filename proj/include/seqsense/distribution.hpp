// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "seqsense/ancilla_state.hpp"

namespace seqsense {

// Measurement-record weight distribution P(k) (or P(k_r, k_i) flattened
// row-major with k_r outer). Entries are clamped to 0 in [-PROB_FAIL, 0);
// anything below -PROB_FAIL is a numerical failure.
struct OutcomeDistribution {
  std::vector<double> p;
  HammingIndex index;
  double mean_excitation = 0.0;  // <k>/N, averaged over both quadratures if two-parameter

  double total() const;
};

// P(j) = <j-weight measurement Dicke state| rho |...>, one transfer matrix per
// quadrature. For one-parameter states pass the (N+1) V; for two-parameter
// states v_re/v_im act on their own index.
OutcomeDistribution outcome_distribution(const AncillaState& state,
                                         const Eigen::MatrixXcd& v_re,
                                         const Eigen::MatrixXcd& v_im);
OutcomeDistribution outcome_distribution(const AncillaState& state,
                                         const Eigen::MatrixXcd& v);

// Same rotation applied to a state derivative: dP(j)/dbeta_a.
std::vector<double> rotated_diagonal(const Eigen::MatrixXcd& m,
                                     const HammingIndex& index,
                                     const Eigen::MatrixXcd& v_re,
                                     const Eigen::MatrixXcd& v_im);

}  // namespace seqsense
