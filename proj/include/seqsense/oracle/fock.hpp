// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "seqsense/noise.hpp"
#include "seqsense/protocol.hpp"

namespace seqsense::oracle {

// Joint qubit (x) oscillator density matrix on a truncated Fock space.
// Index q*dim + n, qubit index 1 = "up".
struct FockState {
  int dim = 60;
  Eigen::MatrixXcd rho;
};

FockState make_vacuum_joint(int dim);

Eigen::MatrixXcd osc_annihilation(int dim);
Eigen::MatrixXcd osc_displacement(int dim, Complex x);
Eigen::VectorXcd coherent_vector(int dim, Complex mu);

// Populations of oscillator levels (traced over the qubit when joint).
Eigen::VectorXd osc_populations(const Eigen::MatrixXcd& rho, int dim);

// Throws numerical_error naming a larger dim if the top 10% of levels hold
// more than 1e-6 population.
void check_truncation(const Eigen::MatrixXcd& rho, int dim);

// Master-equation segment for an arbitrary oscillator-space operator block:
// drive H = i(lambda a^dag - conj(lambda) a), loss/heating/dephasing
// dissipators from the noise model. Fixed-step RK4, steps doubled until
// halving changes the result by < tol in max-norm.
Eigen::MatrixXcd evolve_osc_operator(const Eigen::MatrixXcd& block, const NoiseModel& noise,
                                     Complex drive_rate, double duration, double tol = 1e-9);

// Joint-state segment evolution (dissipators act on the oscillator factor).
FockState fock_lindblad_evolve(const FockState& state, const NoiseModel& noise,
                               Complex drive_rate, double duration, double tol = 1e-9);

Complex mean_amplitude(const FockState& state);
Complex mean_amplitude_osc(const Eigen::MatrixXcd& rho_osc);

// Record-resolved reference for the sequential protocols: evolves one
// oscillator block per record pair through R = total_rounds() rounds of
// (drive+decay segment, coupling kick) and returns the 2^R x 2^R reduced
// record matrix. Kick and drive displacement phases are gauge-corrected to
// the model convention so Gamma -> 0 reproduces the noiseless oracle.
Eigen::MatrixXcd sequential_fock_reference(const ProtocolSpec& spec, const NoiseModel& noise,
                                           int dim);

// Single-measurement protocol under the full master equation: p(down) after
// n = 1..n_max accumulation rounds and one terminal kick of amplitude alpha.
std::vector<double> single_fock_pdown_series(Complex beta, Complex alpha_kick,
                                             const NoiseModel& noise, int n_max, int dim);

}  // namespace seqsense::oracle
