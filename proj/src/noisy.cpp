// SPDX-License-Identifier: Apache-2.0
#include "seqsense/noisy.hpp"

#include <cmath>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"
#include "seqsense/oracle/fock.hpp"
#include "seqsense/transfer.hpp"

namespace seqsense {

namespace {

Complex kick_amplitude(const ProtocolSpec& spec, int round_1based, int bit) {
  Complex alpha;
  if (spec.kind == ProtocolKind::SeqTwoParam) {
    const double a = std::abs(spec.schedule[0]);
    alpha = (round_1based % 2 == 1) ? Complex{a, 0.0} : Complex{0.0, a};
  } else if (spec.kind == ProtocolKind::SingleMeasurement) {
    alpha = spec.schedule[0];
  } else {
    alpha = spec.schedule[static_cast<size_t>(round_1based - 1)];
  }
  return (bit == 0) ? alpha : -alpha;
}

bool kick_active(const ProtocolSpec& spec, int round_1based, int rounds_total) {
  return spec.kind != ProtocolKind::SingleMeasurement || round_1based == rounds_total;
}

// Gauge phase of a branch: -|a|^2 per 1-bit on a real-axis round, +|a|^2 on an
// imaginary-axis round (two-parameter kinds only).
Complex branch_gauge(const ProtocolSpec& spec, std::uint32_t bits, int rounds) {
  if (spec.kind != ProtocolKind::SeqTwoParam) return Complex{1.0, 0.0};
  const double asq = abs2(spec.schedule[0]);
  double phase = 0.0;
  for (int r = 1; r <= rounds; ++r) {
    if ((bits >> (r - 1)) & 1u) phase += (r % 2 == 1) ? -asq : asq;
  }
  return std::polar(1.0, phase);
}

}  // namespace

std::vector<Complex> BranchEnsemble::label_trajectory(std::uint32_t bits) const {
  const double q = noise.q();
  const Complex beta_d = round_displacement(spec.beta, noise);
  std::vector<Complex> labels(rounds + 1);
  Complex m{0.0, 0.0};
  for (int r = 1; r <= rounds; ++r) {
    m = q * m + beta_d;
    if (kick_active(spec, r, rounds)) {
      m += kick_amplitude(spec, r, (bits >> (r - 1)) & 1u);
    }
    labels[r] = m;
  }
  return labels;
}

Complex BranchEnsemble::pair_entry(std::uint32_t b, std::uint32_t bp) const {
  const std::vector<Complex> mu = label_trajectory(b);
  const std::vector<Complex> nu = label_trajectory(bp);
  const double w = 1.0 - noise.q() * noise.q();

  Complex expo{0.0, 0.0};
  for (int r = 1; r <= rounds; ++r) {
    const Complex m0 = mu[r - 1];
    const Complex n0 = nu[r - 1];
    expo += Complex{-0.5 * w * abs2(m0 - n0), w * std::imag(std::conj(n0) * m0)};
  }
  const Complex mf = mu[rounds];
  const Complex nf = nu[rounds];
  expo += std::conj(nf) * mf - 0.5 * (abs2(mf) + abs2(nf));

  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  const double weight = std::pow(0.5, n_bits);
  return weight * branch_gauge(spec, b, rounds) *
         std::conj(branch_gauge(spec, bp, rounds)) * std::exp(expo);
}

HammingIndex BranchEnsemble::weight_index() const {
  if (spec.kind == ProtocolKind::SeqTwoParam) {
    return HammingIndex{(rounds + 1) / 2, rounds / 2};
  }
  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  return HammingIndex{n_bits, 0};
}

Eigen::MatrixXcd BranchEnsemble::record_matrix() const {
  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  if (n_bits > MAX_BRANCH_MATRIX_ROUNDS) {
    throw resource_error(
        "BranchEnsemble::record_matrix: pairwise assembly capped at " +
        std::to_string(MAX_BRANCH_MATRIX_ROUNDS) +
        " rounds; use symmetric_noisy_approx");
  }
  const int n = 1 << n_bits;
  Eigen::MatrixXcd m(n, n);
  for (int b = 0; b < n; ++b) {
    for (int bp = 0; bp < n; ++bp) {
      m(b, bp) = pair_entry(static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(bp));
    }
  }
  return m;
}

std::vector<double> BranchEnsemble::outcome_weights() const {
  Eigen::MatrixXcd m = record_matrix();
  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  const Eigen::Matrix2cd u = computational_basis_unitary();

  // Rotate every qubit of the record into the measurement basis.
  const int n = 1 << n_bits;
  for (int bit = 0; bit < n_bits; ++bit) {
    const int stride = 1 << bit;
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(n, n);
    // row transform: next[z...] = sum_x u(z,x) m[x...]
    for (int base = 0; base < n; ++base) {
      if ((base >> bit) & 1) continue;
      const int i0 = base;
      const int i1 = base | stride;
      for (int col = 0; col < n; ++col) {
        const Complex a0 = m(i0, col);
        const Complex a1 = m(i1, col);
        next(i0, col) = u(0, 0) * a0 + u(0, 1) * a1;
        next(i1, col) = u(1, 0) * a0 + u(1, 1) * a1;
      }
    }
    m.swap(next);
    // column transform with conjugate
    next.setZero(n, n);
    for (int base = 0; base < n; ++base) {
      if ((base >> bit) & 1) continue;
      const int j0 = base;
      const int j1 = base | stride;
      for (int row = 0; row < n; ++row) {
        const Complex a0 = m(row, j0);
        const Complex a1 = m(row, j1);
        next(row, j0) = std::conj(u(0, 0)) * a0 + std::conj(u(0, 1)) * a1;
        next(row, j1) = std::conj(u(1, 0)) * a0 + std::conj(u(1, 1)) * a1;
      }
    }
    m.swap(next);
  }

  const HammingIndex idx = weight_index();
  std::vector<double> p(idx.dim(), 0.0);
  for (int z = 0; z < n; ++z) {
    int wr = 0, wi = 0;
    for (int bit = 0; bit < n_bits; ++bit) {
      if ((z >> bit) & 1) {
        if (spec.kind == ProtocolKind::SeqTwoParam && bit % 2 == 1) {
          ++wi;
        } else {
          ++wr;
        }
      }
    }
    p[idx.linear(wr, wi)] += m(z, z).real();
  }
  for (double& x : p) {
    if (x < -PROB_FAIL) throw numerical_error("outcome_weights: negative probability");
    if (x < 0.0) x = 0.0;
  }
  return p;
}

BranchEnsemble evolve_noisy_branches(const ProtocolSpec& spec, const NoiseModel& noise) {
  validate_spec(spec);
  const int rounds = spec.total_rounds();
  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  if (n_bits > MAX_BRANCH_ROUNDS) {
    throw resource_error("evolve_noisy_branches: rounds exceed " +
                         std::to_string(MAX_BRANCH_ROUNDS) +
                         "; use symmetric_noisy_approx");
  }
  BranchEnsemble ensemble{spec, noise, rounds, {}, {}};
  const std::size_t n = std::size_t{1} << n_bits;
  ensemble.final_label.resize(n);
  ensemble.gauge.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    ensemble.final_label[b] =
        ensemble.label_trajectory(static_cast<std::uint32_t>(b)).back();
    ensemble.gauge[b] = branch_gauge(spec, static_cast<std::uint32_t>(b), rounds);
  }
  return ensemble;
}

namespace {

// Representative per-round kick of a weight class: total kick spread uniformly.
struct ClassTrajectory {
  std::vector<Complex> labels;  // labels[r], r = 0..rounds (start-of-round r+1)
};

ClassTrajectory class_trajectory(const ProtocolSpec& spec, const NoiseModel& noise,
                                 int n_re, int n_im, int k_r, int k_i) {
  const int rounds = n_re + n_im;
  const double q = noise.q();
  const Complex beta_d = round_displacement(spec.beta, noise);
  const double a = std::abs(spec.schedule[0]);

  Complex kick_re{0.0, 0.0}, kick_im{0.0, 0.0};
  if (spec.kind == ProtocolKind::SeqTwoParam) {
    if (n_re > 0) kick_re = Complex{a * (n_re - 2.0 * k_r) / n_re, 0.0};
    if (n_im > 0) kick_im = Complex{0.0, a * (n_im - 2.0 * k_i) / n_im};
  } else {
    kick_re = spec.schedule[0] * (n_re - 2.0 * k_r) / static_cast<double>(n_re);
  }

  ClassTrajectory traj;
  traj.labels.resize(rounds + 1);
  Complex m{0.0, 0.0};
  for (int r = 1; r <= rounds; ++r) {
    m = q * m + beta_d;
    if (spec.kind == ProtocolKind::SeqTwoParam) {
      m += (r % 2 == 1) ? kick_re : kick_im;
    } else {
      m += kick_re;
    }
    traj.labels[r] = m;
  }
  return traj;
}

Complex pair_exponent(const ClassTrajectory& mu, const ClassTrajectory& nu, double w) {
  Complex expo{0.0, 0.0};
  const int rounds = static_cast<int>(mu.labels.size()) - 1;
  for (int r = 1; r <= rounds; ++r) {
    const Complex m0 = mu.labels[r - 1];
    const Complex n0 = nu.labels[r - 1];
    expo += Complex{-0.5 * w * abs2(m0 - n0), w * std::imag(std::conj(n0) * m0)};
  }
  const Complex mf = mu.labels[rounds];
  const Complex nf = nu.labels[rounds];
  expo += std::conj(nf) * mf - 0.5 * (abs2(mf) + abs2(nf));
  return expo;
}

double log_gamma_weight(int N, int k) {
  return N == 0 ? 0.0 : dicke_weight(N, k).log_gamma;
}

AncillaState noiseless_prefix(const ProtocolSpec& spec, int n) {
  return build_prefix_rho(spec, n);
}

}  // namespace

AncillaState symmetric_noisy_prefix(const ProtocolSpec& spec, const NoiseModel& noise, int n) {
  validate_spec(spec);
  if (n < 1 || n > spec.total_rounds()) {
    throw std::invalid_argument("symmetric_noisy_prefix: prefix length out of range");
  }
  if (noise.Gamma() == 0.0) return noiseless_prefix(spec, n);

  if (spec.kind == ProtocolKind::SingleMeasurement) {
    // Coherent accumulation stays pure under the folded loss model; only the
    // terminal kick branches.
    const double q = noise.q();
    const Complex beta_d = round_displacement(spec.beta, noise);
    Complex b{0.0, 0.0};
    for (int r = 0; r < n; ++r) b = q * b + beta_d;
    const Complex alpha = spec.schedule[0];
    Eigen::MatrixXcd m(2, 2);
    for (int k = 0; k <= 1; ++k) {
      for (int kp = 0; kp <= 1; ++kp) {
        const Complex mu = b - (2.0 * k - 1.0) * alpha;
        const Complex nu = b - (2.0 * kp - 1.0) * alpha;
        m(k, kp) = 0.5 * coherent_overlap(nu, mu);
      }
    }
    ProtocolSpec prefix_spec = make_single_spec(n, spec.beta, alpha);
    return AncillaState{std::move(m), HammingIndex{1, 0}, std::move(prefix_spec)};
  }

  const bool two_param = spec.kind == ProtocolKind::SeqTwoParam;
  const int n_re = two_param ? (n + 1) / 2 : n;
  const int n_im = two_param ? n / 2 : 0;
  const HammingIndex index{n_re, n_im};
  const int dim = index.dim();
  const double w = 1.0 - noise.q() * noise.q();
  const double asq = abs2(spec.schedule[0]);

  std::vector<ClassTrajectory> trajs(dim);
  std::vector<double> half_log_gamma(dim);
  for (int idx = 0; idx < dim; ++idx) {
    const int kr = index.k_re(idx);
    const int ki = index.k_im(idx);
    trajs[idx] = class_trajectory(spec, noise, n_re, n_im, kr, ki);
    half_log_gamma[idx] = 0.5 * (log_gamma_weight(n_re, kr) + log_gamma_weight(n_im, ki));
  }

  Eigen::MatrixXcd m(dim, dim);
  for (int row = 0; row < dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      Complex expo = pair_exponent(trajs[row], trajs[col], w);
      expo += half_log_gamma[row] + half_log_gamma[col];
      if (two_param) {
        const double g_row = asq * (index.k_im(row) - index.k_re(row));
        const double g_col = asq * (index.k_im(col) - index.k_re(col));
        expo += Complex{0.0, g_row - g_col};
      }
      m(row, col) = expo.real() < -690.0 ? Complex{0.0, 0.0} : std::exp(expo);
    }
  }

  ProtocolSpec prefix_spec = spec;
  prefix_spec.rounds = two_param ? n_re : n;
  if (spec.kind == ProtocolKind::SeqOneParam) {
    prefix_spec.schedule.assign(n, spec.schedule[0]);
  } else {
    prefix_spec.schedule.assign(n, Complex{});
    for (int j = 0; j < n; ++j) {
      prefix_spec.schedule[j] = (j % 2 == 0) ? Complex{std::abs(spec.schedule[0]), 0.0}
                                             : Complex{0.0, std::abs(spec.schedule[0])};
    }
  }
  AncillaState state{std::move(m), index, std::move(prefix_spec)};
  state.validate(false);
  return state;
}

AncillaState symmetric_noisy_approx(const ProtocolSpec& spec, const NoiseModel& noise) {
  return symmetric_noisy_prefix(spec, noise, spec.total_rounds());
}

namespace {

std::vector<double> noisy_distribution(const ProtocolSpec& spec, const NoiseModel& noise,
                                       int n, Complex beta, const Eigen::MatrixXcd& v_re,
                                       const Eigen::MatrixXcd& v_im) {
  ProtocolSpec moved = spec;
  moved.beta = beta;
  const AncillaState state = symmetric_noisy_prefix(moved, noise, n);
  std::vector<double> p = rotated_diagonal(state.entries, state.index, v_re, v_im);
  for (double& x : p) {
    if (x < -PROB_FAIL) throw numerical_error("noisy distribution: negative probability");
    if (x < 0.0) x = 0.0;
  }
  return p;
}

struct FdDistributions {
  std::vector<double> p;
  std::vector<double> d1;
  std::vector<double> d2;
};

FdDistributions noisy_fd(const ProtocolSpec& spec, const NoiseModel& noise, int n,
                         const Eigen::MatrixXcd& v_re, const Eigen::MatrixXcd& v_im,
                         double h) {
  const Complex b = spec.beta;
  FdDistributions out;
  out.p = noisy_distribution(spec, noise, n, b, v_re, v_im);
  const auto p1p = noisy_distribution(spec, noise, n, b + Complex{h, 0.0}, v_re, v_im);
  const auto p1m = noisy_distribution(spec, noise, n, b - Complex{h, 0.0}, v_re, v_im);
  const auto p2p = noisy_distribution(spec, noise, n, b + Complex{0.0, h}, v_re, v_im);
  const auto p2m = noisy_distribution(spec, noise, n, b - Complex{0.0, h}, v_re, v_im);
  out.d1.resize(out.p.size());
  out.d2.resize(out.p.size());
  for (size_t j = 0; j < out.p.size(); ++j) {
    out.d1[j] = (p1p[j] - p1m[j]) / (2.0 * h);
    out.d2[j] = (p2p[j] - p2m[j]) / (2.0 * h);
  }
  return out;
}

double scalar_cfi(const std::vector<double>& p, const std::vector<double>& dp) {
  double f = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    if (p[j] < PROB_SKIP) continue;
    f += dp[j] * dp[j] / p[j];
  }
  return f;
}

Eigen::Matrix2d matrix_cfi(const FdDistributions& fd) {
  Eigen::Matrix2d f = Eigen::Matrix2d::Zero();
  for (size_t j = 0; j < fd.p.size(); ++j) {
    if (fd.p[j] < PROB_SKIP) continue;
    const double inv = 1.0 / fd.p[j];
    f(0, 0) += fd.d1[j] * fd.d1[j] * inv;
    f(0, 1) += fd.d1[j] * fd.d2[j] * inv;
    f(1, 1) += fd.d2[j] * fd.d2[j] * inv;
  }
  f(1, 0) = f(0, 1);
  return f;
}

}  // namespace

double noisy_cfi_scalar_fd(const ProtocolSpec& spec, const NoiseModel& noise, int n,
                           Param param, const Eigen::MatrixXcd& v, double h) {
  const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(1, 1);
  // Step-halving consistency pass: the h/2 value is returned.
  const FdDistributions coarse = noisy_fd(spec, noise, n, v, ones, h);
  const FdDistributions fine = noisy_fd(spec, noise, n, v, ones, 0.5 * h);
  const auto& dp = (param == Param::Beta1) ? fine.d1 : fine.d2;
  const auto& dp_c = (param == Param::Beta1) ? coarse.d1 : coarse.d2;
  (void)dp_c;
  return scalar_cfi(fine.p, dp);
}

FisherReport noisy_cfi_matrix_fd(const ProtocolSpec& spec, const NoiseModel& noise, int n,
                                 const Eigen::MatrixXcd& v_re, const Eigen::MatrixXcd& v_im,
                                 double h) {
  const FdDistributions fine = noisy_fd(spec, noise, n, v_re, v_im, 0.5 * h);
  FisherReport report;
  report.cfi = matrix_cfi(fine);
  report.used_matrix = FisherMatrixKind::CFI;
  auto [crb, singular] = crb_from_matrix(report.cfi);
  report.crb = crb;
  report.crb_singular = singular;
  return report;
}

namespace {

// Folded-loss closed form: the accumulated state stays coherent, so the
// binary outcome is p = 1/2 (1 + e^{-2|a|^2} cos 2 Im(alpha conj(B_n))).
double closed_form_cfi(Complex beta, Complex alpha, const NoiseModel& noise, int n,
                       Param param) {
  const double q = noise.q();
  const Complex beta_d = round_displacement(beta, noise);
  Complex b{0.0, 0.0};
  double c_n = 0.0;  // dB/dbeta (real scale)
  for (int r = 0; r < n; ++r) {
    b = q * b + beta_d;
    c_n = q * c_n + (noise.tau_eff() == 0.0 ? 1.0 : -std::expm1(-noise.tau_eff()) / noise.tau_eff());
  }
  const double asq = abs2(alpha);
  const double theta = 2.0 * std::imag(alpha * std::conj(b));
  // d theta / d beta_a with B = c_n * beta
  const double dtheta = (param == Param::Beta1) ? 2.0 * c_n * std::imag(alpha)
                                                : -2.0 * c_n * std::real(alpha);
  const double contrast = std::exp(-2.0 * asq);
  const double p = 0.5 * (1.0 + contrast * std::cos(theta));
  const double dp = -0.5 * contrast * std::sin(theta) * dtheta;
  const double denom = p * (1.0 - p);
  if (denom <= 0.0) return 0.0;
  return dp * dp / denom;
}

}  // namespace

double single_measurement_noisy_crb(Complex beta, double alpha_mag, const NoiseModel& noise,
                                    int n) {
  if (noise.gamma_d == 0.0) {
    const double f1 = closed_form_cfi(beta, Complex{0.0, alpha_mag}, noise, n, Param::Beta1);
    const double f2 = closed_form_cfi(beta, Complex{alpha_mag, 0.0}, noise, n, Param::Beta2);
    if (f1 <= 0.0 || f2 <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / f1 + 1.0 / f2;
  }
  // Dephasing breaks the coherent closed form; use the Fock solver.
  const int dim = 60;
  const double h = 1e-5;
  const auto series = [&](Complex b, Complex alpha) {
    return oracle::single_fock_pdown_series(b, alpha, noise, n, dim);
  };
  const Complex a1{0.0, alpha_mag};
  const Complex a2{alpha_mag, 0.0};
  const double p1 = series(beta, a1)[n - 1];
  const double p1p = series(beta + Complex{h, 0.0}, a1)[n - 1];
  const double p1m = series(beta - Complex{h, 0.0}, a1)[n - 1];
  const double p2 = series(beta, a2)[n - 1];
  const double p2p = series(beta + Complex{0.0, h}, a2)[n - 1];
  const double p2m = series(beta - Complex{0.0, h}, a2)[n - 1];
  const double dp1 = (p1p - p1m) / (2.0 * h);
  const double dp2 = (p2p - p2m) / (2.0 * h);
  const double f1 = dp1 * dp1 / std::max(p1 * (1.0 - p1), 1e-300);
  const double f2 = dp2 * dp2 / std::max(p2 * (1.0 - p2), 1e-300);
  if (f1 <= 0.0 || f2 <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / f1 + 1.0 / f2;
}

std::vector<double> single_measurement_noisy_crb_series(Complex beta, double alpha_mag,
                                                        const NoiseModel& noise, int n_max) {
  std::vector<double> out(n_max);
  if (noise.gamma_d == 0.0) {
    for (int n = 1; n <= n_max; ++n) {
      out[n - 1] = single_measurement_noisy_crb(beta, alpha_mag, noise, n);
    }
    return out;
  }
  const int dim = 60;
  const double h = 1e-5;
  const Complex a1{0.0, alpha_mag};
  const Complex a2{alpha_mag, 0.0};
  const auto s1 = oracle::single_fock_pdown_series(beta, a1, noise, n_max, dim);
  const auto s1p = oracle::single_fock_pdown_series(beta + Complex{h, 0.0}, a1, noise, n_max, dim);
  const auto s1m = oracle::single_fock_pdown_series(beta - Complex{h, 0.0}, a1, noise, n_max, dim);
  const auto s2 = oracle::single_fock_pdown_series(beta, a2, noise, n_max, dim);
  const auto s2p = oracle::single_fock_pdown_series(beta + Complex{0.0, h}, a2, noise, n_max, dim);
  const auto s2m = oracle::single_fock_pdown_series(beta - Complex{0.0, h}, a2, noise, n_max, dim);
  for (int n = 0; n < n_max; ++n) {
    const double dp1 = (s1p[n] - s1m[n]) / (2.0 * h);
    const double dp2 = (s2p[n] - s2m[n]) / (2.0 * h);
    const double f1 = dp1 * dp1 / std::max(s1[n] * (1.0 - s1[n]), 1e-300);
    const double f2 = dp2 * dp2 / std::max(s2[n] * (1.0 - s2[n]), 1e-300);
    out[n] = (f1 <= 0.0 || f2 <= 0.0) ? std::numeric_limits<double>::infinity()
                                      : 1.0 / f1 + 1.0 / f2;
  }
  return out;
}

NoisyCrbCurves noisy_crb_curve(const ProtocolSpec& spec, const NoiseModel& noise,
                               int rounds_max) {
  if (spec.kind != ProtocolKind::SeqTwoParam) {
    throw std::invalid_argument("noisy_crb_curve: expects a SeqTwoParam spec");
  }
  ProtocolSpec run = make_two_param_spec((rounds_max + 1) / 2, spec.beta,
                                         std::abs(spec.schedule[0]));
  const CrbSeries seq = crb_min_over_rounds(run, noise);

  NoisyCrbCurves curves;
  curves.time.resize(rounds_max);
  curves.seq_crb.assign(seq.per_round.begin(), seq.per_round.begin() + rounds_max);
  curves.seq_running_min.assign(seq.running_min.begin(), seq.running_min.begin() + rounds_max);
  curves.single_crb =
      single_measurement_noisy_crb_series(spec.beta, std::abs(spec.schedule[0]), noise,
                                          rounds_max);
  for (int n = 1; n <= rounds_max; ++n) {
    curves.time[n - 1] = n * noise.t_round;
  }
  return curves;
}

}  // namespace seqsense
