// SPDX-License-Identifier: Apache-2.0
#include "seqsense/oracle/brute_force.hpp"

#include <cmath>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"
#include "seqsense/transfer.hpp"

namespace seqsense::oracle {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

Complex kick_of(const ProtocolSpec& spec, int round_1based) {
  if (spec.kind == ProtocolKind::SeqTwoParam) {
    const double a = std::abs(spec.schedule[0]);
    return (round_1based % 2 == 1) ? Complex{a, 0.0} : Complex{0.0, a};
  }
  return spec.schedule[static_cast<size_t>(round_1based - 1)];
}

}  // namespace

Eigen::MatrixXcd permute_record_qubits(const Eigen::MatrixXcd& m,
                                       const std::vector<int>& perm) {
  const int n_bits = static_cast<int>(perm.size());
  const int n = 1 << n_bits;
  if (m.rows() != n) throw std::invalid_argument("permute_record_qubits: size mismatch");
  auto remap = [&](int b) {
    int out = 0;
    for (int j = 0; j < n_bits; ++j) {
      if ((b >> j) & 1) out |= 1 << perm[j];
    }
    return out;
  };
  Eigen::MatrixXcd out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out(remap(r), remap(c)) = m(r, c);
    }
  }
  return out;
}

BruteForceResult brute_force_seq(const ProtocolSpec& spec) {
  validate_spec(spec);
  const int rounds = spec.total_rounds();
  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  if (n_bits > MAX_BRANCH_MATRIX_ROUNDS) {
    throw resource_error("brute_force_seq: rounds exceed the pairwise assembly guard");
  }

  const int n = 1 << n_bits;
  const bool two_param = spec.kind == ProtocolKind::SeqTwoParam;
  const double asq = abs2(spec.schedule[0]);

  BruteForceResult result;
  result.spec = spec;
  result.n_bits = n_bits;
  result.labels.resize(n);
  result.amplitudes.resize(n);

  const Complex accumulated_signal = static_cast<double>(rounds) * spec.beta;
  for (int b = 0; b < n; ++b) {
    Complex label = accumulated_signal;
    double gauge_phase = 0.0;
    for (int bit = 0; bit < n_bits; ++bit) {
      const int round = spec.kind == ProtocolKind::SingleMeasurement ? rounds : bit + 1;
      const Complex kick = kick_of(spec, round);
      const int s = (b >> bit) & 1;
      label += (s == 0) ? kick : -kick;
      if (two_param && s == 1) {
        gauge_phase += (round % 2 == 1) ? -asq : asq;
      }
    }
    result.labels[b] = label;
    result.amplitudes[b] =
        std::pow(0.5, 0.5 * n_bits) * std::polar(1.0, gauge_phase);
  }

  result.record_matrix.resize(n, n);
  for (int b = 0; b < n; ++b) {
    for (int bp = 0; bp < n; ++bp) {
      result.record_matrix(b, bp) = result.amplitudes[b] * std::conj(result.amplitudes[bp]) *
                                    coherent_overlap(result.labels[bp], result.labels[b]);
    }
  }

  // Group by Hamming weight(s); the model is weight-determined, so every
  // in-group entry must agree. The grouped Dicke entry is sqrt(C C') * rep.
  const HammingIndex index = two_param
                                 ? HammingIndex{(rounds + 1) / 2, rounds / 2}
                                 : HammingIndex{n_bits, 0};
  const int dim = index.dim();
  auto weights_of = [&](int b) {
    int wr = 0, wi = 0;
    for (int bit = 0; bit < n_bits; ++bit) {
      if ((b >> bit) & 1) {
        if (two_param && bit % 2 == 1) {
          ++wi;
        } else {
          ++wr;
        }
      }
    }
    return index.linear(wr, wi);
  };
  std::vector<int> group(n);
  for (int b = 0; b < n; ++b) group[b] = weights_of(b);

  Eigen::MatrixXcd rep = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < n; ++b) {
    for (int bp = 0; bp < n; ++bp) {
      rep(group[b], group[bp]) += result.record_matrix(b, bp);
      counts(group[b], group[bp]) += 1.0;
    }
  }
  double spread = 0.0;
  for (int b = 0; b < n; ++b) {
    for (int bp = 0; bp < n; ++bp) {
      const Complex mean = rep(group[b], group[bp]) / counts(group[b], group[bp]);
      spread = std::max(spread, std::abs(result.record_matrix(b, bp) - mean));
    }
  }
  Eigen::MatrixXcd grouped(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double ci = two_param ? binom(index.n_re, index.k_re(i)) *
                                      binom(index.n_im, index.k_im(i))
                                : binom(n_bits, i);
    for (int j = 0; j < dim; ++j) {
      const double cj = two_param ? binom(index.n_re, index.k_re(j)) *
                                        binom(index.n_im, index.k_im(j))
                                  : binom(n_bits, j);
      grouped(i, j) = std::sqrt(ci * cj) * rep(i, j) / counts(i, j);
    }
  }
  result.grouping_deviation = spread;
  result.grouped = AncillaState{std::move(grouped), index, spec};

  // Measurement-basis record distribution: rotate each record qubit by u.
  const Eigen::Matrix2cd u = computational_basis_unitary();
  Eigen::MatrixXcd m = result.record_matrix;
  for (int bit = 0; bit < n_bits; ++bit) {
    const int stride = 1 << bit;
    Eigen::MatrixXcd next(n, n);
    for (int base = 0; base < n; ++base) {
      if ((base >> bit) & 1) continue;
      for (int col = 0; col < n; ++col) {
        const Complex a0 = m(base, col);
        const Complex a1 = m(base | stride, col);
        next(base, col) = u(0, 0) * a0 + u(0, 1) * a1;
        next(base | stride, col) = u(1, 0) * a0 + u(1, 1) * a1;
      }
    }
    m.swap(next);
    for (int base = 0; base < n; ++base) {
      if ((base >> bit) & 1) continue;
      for (int row = 0; row < n; ++row) {
        const Complex a0 = m(row, base);
        const Complex a1 = m(row, base | stride);
        next(row, base) = std::conj(u(0, 0)) * a0 + std::conj(u(0, 1)) * a1;
        next(row, base | stride) = std::conj(u(1, 0)) * a0 + std::conj(u(1, 1)) * a1;
      }
    }
    m.swap(next);
  }
  result.z_distribution.assign(dim, 0.0);
  for (int z = 0; z < n; ++z) {
    result.z_distribution[group[z]] += m(z, z).real();
  }
  for (double& x : result.z_distribution) {
    if (x < 0.0 && x > -PROB_FAIL) x = 0.0;
  }
  return result;
}

}  // namespace seqsense::oracle
