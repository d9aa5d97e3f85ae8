// SPDX-License-Identifier: Apache-2.0
#include "seqsense/protocol.hpp"

#include <cmath>

namespace seqsense {

namespace {

void require_positive_rounds(int rounds) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
}

}  // namespace

ProtocolSpec make_single_spec(int rounds, Complex beta, Complex alpha) {
  require_positive_rounds(rounds);
  require_finite(beta, "beta");
  require_finite(alpha, "alpha");
  return ProtocolSpec{ProtocolKind::SingleMeasurement, rounds, beta, {alpha}};
}

ProtocolSpec make_seq_spec(int rounds, Complex beta, Complex alpha) {
  require_positive_rounds(rounds);
  require_finite(beta, "beta");
  require_finite(alpha, "alpha");
  return ProtocolSpec{ProtocolKind::SeqOneParam, rounds, beta,
                      std::vector<Complex>(rounds, alpha)};
}

ProtocolSpec make_two_param_spec(int rounds_per_quadrature, Complex beta, double alpha_mag) {
  require_positive_rounds(rounds_per_quadrature);
  require_finite(beta, "beta");
  if (!(alpha_mag > 0.0) || !std::isfinite(alpha_mag)) {
    throw std::invalid_argument("alpha magnitude must be positive and finite");
  }
  std::vector<Complex> schedule(2 * rounds_per_quadrature);
  for (int n = 0; n < 2 * rounds_per_quadrature; ++n) {
    schedule[n] = (n % 2 == 0) ? Complex{alpha_mag, 0.0} : Complex{0.0, alpha_mag};
  }
  return ProtocolSpec{ProtocolKind::SeqTwoParam, rounds_per_quadrature, beta,
                      std::move(schedule)};
}

void validate_spec(const ProtocolSpec& spec) {
  require_positive_rounds(spec.rounds);
  require_finite(spec.beta, "beta");
  for (const Complex& a : spec.schedule) require_finite(a, "schedule entry");

  switch (spec.kind) {
    case ProtocolKind::SingleMeasurement:
      if (spec.schedule.size() != 1) {
        throw std::invalid_argument("single-measurement spec carries one coupling amplitude");
      }
      break;
    case ProtocolKind::SeqOneParam: {
      if (static_cast<int>(spec.schedule.size()) != spec.rounds) {
        throw std::invalid_argument("sequential schedule length must equal rounds");
      }
      break;
    }
    case ProtocolKind::SeqTwoParam: {
      if (static_cast<int>(spec.schedule.size()) != 2 * spec.rounds) {
        throw std::invalid_argument("two-parameter schedule length must equal 2*rounds");
      }
      const double mag = std::abs(spec.schedule[0]);
      for (int n = 0; n < static_cast<int>(spec.schedule.size()); ++n) {
        const Complex want = (n % 2 == 0) ? Complex{mag, 0.0} : Complex{0.0, mag};
        if (std::abs(spec.schedule[n] - want) > 1e-12 * (1.0 + mag)) {
          throw std::invalid_argument(
              "two-parameter schedule must alternate phase by 90 degrees at constant magnitude");
        }
      }
      break;
    }
  }
}

}  // namespace seqsense
