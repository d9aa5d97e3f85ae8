// SPDX-License-Identifier: Apache-2.0
#include "seqsense/builders.hpp"

#include <cmath>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"

namespace seqsense {

namespace {

constexpr double kLogUnderflow = -690.7755278982137;  // ln(1e-300)

Complex from_log_polar(double log_mag, double phase) {
  if (log_mag < kLogUnderflow) return Complex{0.0, 0.0};
  return std::polar(std::exp(log_mag), phase);
}

double log_gamma_weight(int N, int k) {
  return N == 0 ? 0.0 : dicke_weight(N, k).log_gamma;
}

void check_hermitian_trace(const Eigen::MatrixXcd& m) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double tr = std::abs(m.trace() - Complex{1.0, 0.0});
  if (herm > 1e-10 || tr > 1e-10) {
    throw numerical_error("record state failed Hermiticity/trace check");
  }
}

}  // namespace

void AncillaState::validate(bool check_psd) const {
  check_hermitian_trace(entries);
  if (check_psd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numerical_error("eigensolver failed");
    if (es.eigenvalues().minCoeff() < EPS_PSD) {
      throw numerical_error("record state is not positive semidefinite");
    }
  }
}

AncillaState build_single_rho(const ProtocolSpec& spec) {
  validate_spec(spec);
  if (spec.kind != ProtocolKind::SingleMeasurement) {
    throw std::invalid_argument("build_single_rho: wrong protocol kind");
  }
  const Complex alpha = spec.schedule[0];
  const double asq = abs2(alpha);
  const double phi = std::imag(alpha * std::conj(spec.beta));
  const double n = static_cast<double>(spec.rounds);

  Eigen::MatrixXcd m(2, 2);
  for (int k = 0; k <= 1; ++k) {
    for (int kp = 0; kp <= 1; ++kp) {
      const double da = 2.0 * (k - kp);  // a - a' with a = 2k-1
      m(k, kp) = 0.5 * from_log_polar(-0.5 * da * da * asq, -da * n * phi);
    }
  }
  AncillaState state{std::move(m), HammingIndex{1, 0}, spec};
  check_hermitian_trace(state.entries);
  return state;
}

AncillaState build_seq_rho(const ProtocolSpec& spec) {
  validate_spec(spec);
  if (spec.kind != ProtocolKind::SeqOneParam) {
    throw std::invalid_argument("build_seq_rho: wrong protocol kind");
  }
  const int N = spec.rounds;
  if (N > MAX_SEQ_ROUNDS) {
    throw resource_error("build_seq_rho: rounds exceed MAX_SEQ_ROUNDS");
  }
  const Complex alpha = spec.schedule[0];
  for (const Complex& a : spec.schedule) {
    if (std::abs(a - alpha) > 1e-14 * (1.0 + std::abs(alpha))) {
      throw std::invalid_argument("build_seq_rho: schedule must be constant");
    }
  }
  const double asq = abs2(alpha);
  const double phi = std::imag(alpha * std::conj(spec.beta));
  const double n = static_cast<double>(N);

  std::vector<double> lg(N + 1);
  for (int k = 0; k <= N; ++k) lg[k] = dicke_weight(N, k).log_gamma;

  Eigen::MatrixXcd m(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int kp = 0; kp <= N; ++kp) {
      const double d = static_cast<double>(k - kp);
      const double log_mag = 0.5 * (lg[k] + lg[kp]) - 2.0 * d * d * asq;
      m(k, kp) = from_log_polar(log_mag, -2.0 * n * d * phi);
    }
  }
  AncillaState state{std::move(m), HammingIndex{N, 0}, spec};
  check_hermitian_trace(state.entries);
  return state;
}

AncillaState build_two_param_prefix_rho(int n_re, int n_im, Complex beta, double alpha_mag) {
  if (n_re < 0 || n_im < 0 || n_re + n_im < 1) {
    throw std::invalid_argument("build_two_param_prefix_rho: need at least one round");
  }
  if (n_re > MAX_SEQ_ROUNDS || n_im > MAX_SEQ_ROUNDS) {
    throw resource_error("build_two_param_prefix_rho: rounds exceed MAX_SEQ_ROUNDS");
  }
  require_finite(beta, "beta");
  const double a = alpha_mag;
  const double asq = a * a;
  const double b1 = beta.real();
  const double b2 = beta.imag();
  const double n = static_cast<double>(n_re + n_im);

  std::vector<double> lg_re(n_re + 1), lg_im(n_im + 1);
  for (int k = 0; k <= n_re; ++k) lg_re[k] = log_gamma_weight(n_re, k);
  for (int k = 0; k <= n_im; ++k) lg_im[k] = log_gamma_weight(n_im, k);

  const HammingIndex index{n_re, n_im};
  Eigen::MatrixXcd m(index.dim(), index.dim());
  for (int kr = 0; kr <= n_re; ++kr) {
    for (int ki = 0; ki <= n_im; ++ki) {
      const int row = index.linear(kr, ki);
      for (int krp = 0; krp <= n_re; ++krp) {
        for (int kip = 0; kip <= n_im; ++kip) {
          const int col = index.linear(krp, kip);
          const double dr = static_cast<double>(krp - kr);
          const double di = static_cast<double>(kip - ki);
          const double log_mag = 0.5 * (lg_re[kr] + lg_im[ki] + lg_re[krp] + lg_im[kip]) -
                                 2.0 * asq * (dr * dr + di * di);
          const double cross = static_cast<double>(ki) * krp - static_cast<double>(kip) * kr;
          const double phase = 2.0 * n * a * (b1 * di - b2 * dr) +
                               asq * (4.0 * cross + (2.0 * n_re - 1.0) * di -
                                      (2.0 * n_im - 1.0) * dr);
          m(row, col) = from_log_polar(log_mag, phase);
        }
      }
    }
  }
  std::vector<Complex> schedule(n_re + n_im);
  for (int j = 0; j < n_re + n_im; ++j) {
    schedule[j] = (j % 2 == 0) ? Complex{a, 0.0} : Complex{0.0, a};
  }
  ProtocolSpec spec{ProtocolKind::SeqTwoParam, std::max(n_re, 1), beta, std::move(schedule)};
  AncillaState state{std::move(m), index, std::move(spec)};
  check_hermitian_trace(state.entries);
  return state;
}

AncillaState build_two_param_rho(const ProtocolSpec& spec) {
  validate_spec(spec);
  if (spec.kind != ProtocolKind::SeqTwoParam) {
    throw std::invalid_argument("build_two_param_rho: wrong protocol kind");
  }
  AncillaState state =
      build_two_param_prefix_rho(spec.rounds, spec.rounds, spec.beta, std::abs(spec.schedule[0]));
  state.spec = spec;
  return state;
}

AncillaState build_prefix_rho(const ProtocolSpec& spec, int n) {
  validate_spec(spec);
  if (n < 1 || n > spec.total_rounds()) {
    throw std::invalid_argument("build_prefix_rho: prefix length out of range");
  }
  switch (spec.kind) {
    case ProtocolKind::SingleMeasurement:
      return build_single_rho(make_single_spec(n, spec.beta, spec.schedule[0]));
    case ProtocolKind::SeqOneParam:
      return build_seq_rho(make_seq_spec(n, spec.beta, spec.schedule[0]));
    case ProtocolKind::SeqTwoParam:
      return build_two_param_prefix_rho((n + 1) / 2, n / 2, spec.beta,
                                        std::abs(spec.schedule[0]));
  }
  throw std::invalid_argument("build_prefix_rho: unknown kind");
}

StateDerivative d_rho(const AncillaState& state, Param param) {
  const int dim = state.dim();
  Eigen::MatrixXcd out(dim, dim);
  const Complex i_unit{0.0, 1.0};

  if (state.index.n_im > 0) {
    // Two-parameter state: dPhi/db1 = 2n|a|(ki'-ki), dPhi/db2 = 2n|a|(kr-kr').
    const HammingIndex& idx = state.index;
    const double n = static_cast<double>(idx.n_re + idx.n_im);
    const double a_mag = std::abs(state.spec.schedule[0]);
    for (int row = 0; row < dim; ++row) {
      for (int col = 0; col < dim; ++col) {
        const double dr = idx.k_re(col) - idx.k_re(row);
        const double di = idx.k_im(col) - idx.k_im(row);
        const double dphase = (param == Param::Beta1) ? 2.0 * n * a_mag * di
                                                      : -2.0 * n * a_mag * dr;
        out(row, col) = i_unit * dphase * state.entries(row, col);
      }
    }
    return StateDerivative{std::move(out), param};
  }

  // One-parameter kinds: phase is -2N(k-k') Im(alpha conj(beta)).
  const Complex alpha = state.spec.schedule[0];
  const double n = static_cast<double>(state.spec.rounds);
  const double dphi = (param == Param::Beta1) ? std::imag(alpha) : -std::real(alpha);
  for (int row = 0; row < dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      const double d = row - col;
      out(row, col) = i_unit * (-2.0 * n * d * dphi) * state.entries(row, col);
    }
  }
  return StateDerivative{std::move(out), param};
}

double joint_qfi_closed_form(ProtocolKind kind, int rounds,
                             const std::vector<Complex>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("joint_qfi_closed_form: empty schedule");
  const double n = static_cast<double>(rounds);
  switch (kind) {
    case ProtocolKind::SingleMeasurement:
      return 4.0 * n * n + 4.0 * n * n * abs2(schedule[0]);
    case ProtocolKind::SeqOneParam: {
      double sum = 0.0;
      for (const Complex& a : schedule) sum += abs2(a);
      return 4.0 * n * n * (1.0 + sum);
    }
    case ProtocolKind::SeqTwoParam:
      throw std::invalid_argument("joint_qfi_closed_form: no closed form for SeqTwoParam");
  }
  throw std::invalid_argument("joint_qfi_closed_form: unknown kind");
}

}  // namespace seqsense
