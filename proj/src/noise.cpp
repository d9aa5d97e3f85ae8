// SPDX-License-Identifier: Apache-2.0
#include "seqsense/noise.hpp"

#include <stdexcept>

namespace seqsense {

NoiseModel make_noise(double gamma, double gamma_d, double n_th, double t_round, double g) {
  if (gamma < 0 || gamma_d < 0 || n_th < 0 || t_round < 0 || g < 0) {
    throw std::invalid_argument("noise rates and durations must be nonnegative");
  }
  return NoiseModel{gamma, gamma_d, n_th, t_round, g};
}

double round_time(Complex beta, double g) {
  if (!(g > 0)) throw std::invalid_argument("round_time: g must be positive");
  return std::sqrt(2.0) * std::abs(beta) / g;
}

NoiseModel make_noise_for_beta(double gamma, double gamma_d, double g, Complex beta,
                               double n_th) {
  return make_noise(gamma, gamma_d, n_th, round_time(beta, g), g);
}

double displaced_amplitude(double g, double Gamma, double t) {
  if (Gamma < 0 || t < 0) throw std::invalid_argument("displaced_amplitude: negative input");
  if (Gamma == 0.0) return g * t / std::sqrt(2.0);
  return std::sqrt(2.0) * g / Gamma * (-std::expm1(-0.5 * Gamma * t));
}

Complex round_displacement(Complex beta, const NoiseModel& noise) {
  const double tau = noise.tau_eff();
  if (tau == 0.0) return beta;
  return beta * (-std::expm1(-tau) / tau);
}

}  // namespace seqsense
