// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "seqsense/builders.hpp"
#include "seqsense/distribution.hpp"
#include "seqsense/noise.hpp"
#include "seqsense/transfer.hpp"

namespace seqsense {

enum class FisherMatrixKind { QFI, CFI };

struct FisherReport {
  Eigen::Matrix2d qfi = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d cfi = Eigen::Matrix2d::Zero();
  double sld_residual = 0.0;   // max |Im 1/2 Tr(rho {L_a, L_b})| over parameter pairs
  double crb = std::numeric_limits<double>::infinity();
  bool crb_singular = false;
  FisherMatrixKind used_matrix = FisherMatrixKind::QFI;
};

// Eigendecomposition QFI: F = sum_{p_j+p_k > eps} 2|<j|d rho|k>|^2/(p_j+p_k).
double qfi_scalar(const AncillaState& state, const StateDerivative& d,
                  double eps_eig = EPS_EIG);

// Full 2x2 QFI matrix plus the SLD commutation residual, same eigenbasis.
FisherReport qfi_matrix(const AncillaState& state, const StateDerivative& d1,
                        const StateDerivative& d2, double eps_eig = EPS_EIG);

// Classical Fisher information of the weight distribution. dP terms with
// P(k) < PROB_SKIP are skipped. Derivatives are analytic through d_rho.
double cfi_scalar(const AncillaState& state, const StateDerivative& d,
                  const Eigen::MatrixXcd& v_re, const Eigen::MatrixXcd& v_im);
FisherReport cfi_matrix(const AncillaState& state, const StateDerivative& d1,
                        const StateDerivative& d2, const Eigen::MatrixXcd& v_re,
                        const Eigen::MatrixXcd& v_im);

// Finite-difference cross-check path (central, step h in each quadrature).
FisherReport cfi_matrix_fd(const ProtocolSpec& spec, double h = 1e-6);

// CRB of a 2x2 Fisher matrix: Tr[F^-1], +inf flag when singular.
std::pair<double, bool> crb_from_matrix(const Eigen::Matrix2d& f);

struct CrbSeries {
  std::vector<double> per_round;     // CRB of the n-round prefix, n = 1..rounds
  std::vector<double> running_min;   // nonincreasing by construction
};

// Per-prefix CFI-based CRB. With a NoiseModel the prefix states come from the
// Hamming-symmetric noisy approximation and derivatives switch to central
// finite differences (h = 1e-5) with a step-halving consistency check.
CrbSeries crb_min_over_rounds(const ProtocolSpec& spec,
                              const std::optional<NoiseModel>& noise = std::nullopt);

// Centered finite difference of log F against log N at each interior sample.
std::vector<std::pair<double, double>> scaling_exponent(
    const std::vector<std::pair<double, double>>& f_samples);

}  // namespace seqsense
