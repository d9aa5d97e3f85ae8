// SPDX-License-Identifier: Apache-2.0
#include "seqsense/core_math.hpp"

#include <numbers>
#include <string>

namespace seqsense {

void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

Complex coherent_overlap(Complex bra, Complex ket) {
  require_finite(bra, "bra");
  require_finite(ket, "ket");
  const Complex expo = -0.5 * (abs2(bra) + abs2(ket)) + std::conj(bra) * ket;
  return std::exp(expo);
}

DickeWeight dicke_weight(int N, int k) {
  if (N <= 0) throw std::invalid_argument("dicke_weight: N must be positive");
  if (k < 0 || k > N) throw std::invalid_argument("dicke_weight: k out of range 0..N");
  const double n = static_cast<double>(N);
  const double kk = static_cast<double>(k);
  const double log_binom =
      std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0);
  return DickeWeight{N, k, log_binom - n * std::numbers::ln2};
}

ScaledReal scaled_sqrt_weight_product(const DickeWeight& wa, const DickeWeight& wb) {
  if (wa.N != wb.N) {
    throw std::invalid_argument("scaled_sqrt_weight_product: mismatched N");
  }
  const double log_value = 0.5 * (wa.log_gamma + wb.log_gamma);
  const double scale = std::floor(log_value / std::numbers::ln2) * std::numbers::ln2;
  return ScaledReal{std::exp(log_value - scale), scale};
}

}  // namespace seqsense
