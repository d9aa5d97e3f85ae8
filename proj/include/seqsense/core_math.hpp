// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"

namespace seqsense {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

void require_finite(Complex z, const char* what);

// <bra|ket> for coherent states labelled by complex amplitudes:
// exp(-(|bra|^2+|ket|^2)/2 + conj(bra)*ket). Magnitude is always <= 1.
Complex coherent_overlap(Complex bra, Complex ket);

// Binomial weight gamma_k = C(N,k)/2^N held in log space.
struct DickeWeight {
  int N = 0;
  int k = 0;
  double log_gamma = 0.0;
};

// Valid for N up to MAX_SEQ_ROUNDS without overflow; out-of-range k is a domain error.
DickeWeight dicke_weight(int N, int k);

// value = mantissa * exp(log_scale), mantissa kept in [0.5, 2).
struct ScaledReal {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const { return mantissa * std::exp(log_scale); }
};

// Underflow-safe sqrt(gamma_k * gamma_k') for two weights of the same N.
ScaledReal scaled_sqrt_weight_product(const DickeWeight& wa, const DickeWeight& wb);

// Linearization of the (k_r, k_i) grid used by the two-parameter protocol:
// row-major with k_r outer. n_re/n_im are the per-quadrature round counts.
struct HammingIndex {
  int n_re = 0;
  int n_im = 0;

  int dim() const { return (n_re + 1) * (n_im + 1); }
  int linear(int k_r, int k_i) const { return k_r * (n_im + 1) + k_i; }
  int k_re(int idx) const { return idx / (n_im + 1); }
  int k_im(int idx) const { return idx % (n_im + 1); }
};

}  // namespace seqsense
