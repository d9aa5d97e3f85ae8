// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "seqsense/core_math.hpp"

namespace seqsense {

// Oscillator noise parameters. Gamma = gamma + gamma_d is the effective decay
// rate of the coherent-state amplitude; tau_eff = Gamma * t_round / 2 is the
// per-round decoherence strength.
struct NoiseModel {
  double gamma = 0.0;     // loss rate, 1/s
  double gamma_d = 0.0;   // dephasing rate, 1/s
  double n_th = 0.0;      // thermal occupation (Fock oracle only)
  double t_round = 0.0;   // per-round duration, s
  double g = 0.0;         // signal coupling rate, 1/s

  double Gamma() const { return gamma + gamma_d; }
  double tau_eff() const { return 0.5 * Gamma() * t_round; }
  // Per-round label decay factor e^{-Gamma t/2}.
  double q() const { return std::exp(-tau_eff()); }
};

NoiseModel make_noise(double gamma, double gamma_d, double n_th, double t_round, double g);

// t = sqrt(2)|beta|/g, the round duration at which the drive accrues |beta|.
double round_time(Complex beta, double g);

// Builds the model from the protocol's beta: g fixed, t from round_time.
NoiseModel make_noise_for_beta(double gamma, double gamma_d, double g, Complex beta,
                               double n_th = 0.0);

// Coherent amplitude accrued by a drive of rate g over time t under decay:
// sqrt(2) g/Gamma (1 - e^{-Gamma t/2}); Gamma -> 0 limit g t / sqrt(2).
double displaced_amplitude(double g, double Gamma, double t);

// Per-round accrued displacement along beta's direction: beta (1-q)/tau_eff.
Complex round_displacement(Complex beta, const NoiseModel& noise);

}  // namespace seqsense
