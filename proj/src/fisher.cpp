// SPDX-License-Identifier: Apache-2.0
#include "seqsense/fisher.hpp"

#include <cmath>

#include "seqsense/errors.hpp"
#include "seqsense/noisy.hpp"

namespace seqsense {

namespace {

// 2/(p_j+p_k)-weighted sums over the eigenbasis; returns the complex
// S_ab = 1/2 Tr(rho {L_a, L_b}) + i Im(...). Real part is the QFI entry.
struct EigenContext {
  Eigen::VectorXd p;
  Eigen::MatrixXcd vectors;
};

EigenContext eigendecompose(const AncillaState& state) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.entries);
  if (es.info() != Eigen::Success) {
    throw numerical_error("qfi: eigensolver failed");
  }
  return EigenContext{es.eigenvalues(), es.eigenvectors()};
}

Complex fisher_sum(const EigenContext& ctx, const Eigen::MatrixXcd& da,
                   const Eigen::MatrixXcd& db, double eps_eig) {
  const Eigen::MatrixXcd ra = ctx.vectors.adjoint() * da * ctx.vectors;
  const Eigen::MatrixXcd rb = ctx.vectors.adjoint() * db * ctx.vectors;
  const int d = static_cast<int>(ctx.p.size());
  Complex acc{0.0, 0.0};
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double denom = ctx.p[j] + ctx.p[k];
      if (denom <= eps_eig) continue;
      acc += 2.0 / denom * ra(j, k) * std::conj(rb(j, k));
    }
  }
  return acc;
}

double scalar_cfi_from(const std::vector<double>& p, const std::vector<double>& dp) {
  double f = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    if (p[j] < PROB_SKIP) continue;
    f += dp[j] * dp[j] / p[j];
  }
  return f;
}

Eigen::Matrix2d cfi_from(const std::vector<double>& p, const std::vector<double>& d1,
                         const std::vector<double>& d2) {
  Eigen::Matrix2d f = Eigen::Matrix2d::Zero();
  for (size_t j = 0; j < p.size(); ++j) {
    if (p[j] < PROB_SKIP) continue;
    const double inv = 1.0 / p[j];
    f(0, 0) += d1[j] * d1[j] * inv;
    f(0, 1) += d1[j] * d2[j] * inv;
    f(1, 1) += d2[j] * d2[j] * inv;
  }
  f(1, 0) = f(0, 1);
  return f;
}

}  // namespace

double qfi_scalar(const AncillaState& state, const StateDerivative& d, double eps_eig) {
  const EigenContext ctx = eigendecompose(state);
  return fisher_sum(ctx, d.entries, d.entries, eps_eig).real();
}

FisherReport qfi_matrix(const AncillaState& state, const StateDerivative& d1,
                        const StateDerivative& d2, double eps_eig) {
  const EigenContext ctx = eigendecompose(state);
  const Complex s11 = fisher_sum(ctx, d1.entries, d1.entries, eps_eig);
  const Complex s22 = fisher_sum(ctx, d2.entries, d2.entries, eps_eig);
  const Complex s12 = fisher_sum(ctx, d1.entries, d2.entries, eps_eig);

  FisherReport report;
  report.qfi << s11.real(), s12.real(), s12.real(), s22.real();
  report.sld_residual = std::abs(s12.imag());
  report.used_matrix = FisherMatrixKind::QFI;
  auto [crb, singular] = crb_from_matrix(report.qfi);
  report.crb = crb;
  report.crb_singular = singular;
  return report;
}

double cfi_scalar(const AncillaState& state, const StateDerivative& d,
                  const Eigen::MatrixXcd& v_re, const Eigen::MatrixXcd& v_im) {
  const OutcomeDistribution dist = outcome_distribution(state, v_re, v_im);
  const std::vector<double> dp = rotated_diagonal(d.entries, state.index, v_re, v_im);
  return scalar_cfi_from(dist.p, dp);
}

FisherReport cfi_matrix(const AncillaState& state, const StateDerivative& d1,
                        const StateDerivative& d2, const Eigen::MatrixXcd& v_re,
                        const Eigen::MatrixXcd& v_im) {
  const OutcomeDistribution dist = outcome_distribution(state, v_re, v_im);
  const std::vector<double> dp1 = rotated_diagonal(d1.entries, state.index, v_re, v_im);
  const std::vector<double> dp2 = rotated_diagonal(d2.entries, state.index, v_re, v_im);

  FisherReport report;
  report.cfi = cfi_from(dist.p, dp1, dp2);
  report.used_matrix = FisherMatrixKind::CFI;
  auto [crb, singular] = crb_from_matrix(report.cfi);
  report.crb = crb;
  report.crb_singular = singular;
  return report;
}

namespace {

AncillaState build_any(const ProtocolSpec& spec) {
  switch (spec.kind) {
    case ProtocolKind::SingleMeasurement: return build_single_rho(spec);
    case ProtocolKind::SeqOneParam: return build_seq_rho(spec);
    case ProtocolKind::SeqTwoParam: return build_two_param_rho(spec);
  }
  throw std::invalid_argument("unknown protocol kind");
}

std::vector<double> distribution_for_beta(const ProtocolSpec& spec, Complex beta,
                                          const Eigen::MatrixXcd& v_re,
                                          const Eigen::MatrixXcd& v_im) {
  ProtocolSpec moved = spec;
  moved.beta = beta;
  const AncillaState state = build_any(moved);
  return outcome_distribution(state, v_re, v_im).p;
}

}  // namespace

FisherReport cfi_matrix_fd(const ProtocolSpec& spec, double h) {
  const Eigen::Matrix2cd u = computational_basis_unitary();
  const AncillaState base = build_any(spec);
  const Eigen::MatrixXcd v_re = transfer_matrix(base.index.n_re, u);
  const Eigen::MatrixXcd v_im = base.index.n_im > 0
                                    ? transfer_matrix(base.index.n_im, u)
                                    : Eigen::MatrixXcd::Ones(1, 1);

  const OutcomeDistribution dist = outcome_distribution(base, v_re, v_im);
  const Complex b = spec.beta;
  const auto p1p = distribution_for_beta(spec, b + Complex{h, 0.0}, v_re, v_im);
  const auto p1m = distribution_for_beta(spec, b - Complex{h, 0.0}, v_re, v_im);
  const auto p2p = distribution_for_beta(spec, b + Complex{0.0, h}, v_re, v_im);
  const auto p2m = distribution_for_beta(spec, b - Complex{0.0, h}, v_re, v_im);

  std::vector<double> d1(dist.p.size()), d2(dist.p.size());
  for (size_t j = 0; j < dist.p.size(); ++j) {
    d1[j] = (p1p[j] - p1m[j]) / (2.0 * h);
    d2[j] = (p2p[j] - p2m[j]) / (2.0 * h);
  }

  FisherReport report;
  report.cfi = cfi_from(dist.p, d1, d2);
  report.used_matrix = FisherMatrixKind::CFI;
  auto [crb, singular] = crb_from_matrix(report.cfi);
  report.crb = crb;
  report.crb_singular = singular;
  return report;
}

std::pair<double, bool> crb_from_matrix(const Eigen::Matrix2d& f) {
  const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
  const double scale = std::max({std::abs(f(0, 0)), std::abs(f(1, 1)), 1e-300});
  if (det <= scale * scale * 1e-14) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {(f(0, 0) + f(1, 1)) / det, false};
}

namespace {

double prefix_crb(const ProtocolSpec& spec, int n, const std::optional<NoiseModel>& noise) {
  const Eigen::Matrix2cd u = computational_basis_unitary();

  if (spec.kind == ProtocolKind::SingleMeasurement) {
    // Two independent runs, one per quadrature: CRB = 1/F1 + 1/F2.
    if (noise) return single_measurement_noisy_crb(spec.beta, std::abs(spec.schedule[0]), *noise, n);
    const double a = std::abs(spec.schedule[0]);
    const ProtocolSpec run1 = make_single_spec(n, spec.beta, Complex{0.0, a});
    const ProtocolSpec run2 = make_single_spec(n, spec.beta, Complex{a, 0.0});
    const Eigen::MatrixXcd v = transfer_matrix(1, u);
    const AncillaState s1 = build_single_rho(run1);
    const AncillaState s2 = build_single_rho(run2);
    const double f1 = cfi_scalar(s1, d_rho(s1, Param::Beta1), v, Eigen::MatrixXcd::Ones(1, 1));
    const double f2 = cfi_scalar(s2, d_rho(s2, Param::Beta2), v, Eigen::MatrixXcd::Ones(1, 1));
    if (f1 <= 0.0 || f2 <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / f1 + 1.0 / f2;
  }

  AncillaState state = noise ? symmetric_noisy_prefix(spec, *noise, n)
                             : build_prefix_rho(spec, n);

  if (spec.kind == ProtocolKind::SeqOneParam) {
    const Complex alpha = spec.schedule[0];
    const Param param =
        std::abs(std::imag(alpha)) >= std::abs(std::real(alpha)) ? Param::Beta1 : Param::Beta2;
    const Eigen::MatrixXcd v = transfer_matrix(state.index.n_re, u);
    const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(1, 1);
    double f;
    if (noise) {
      f = noisy_cfi_scalar_fd(spec, *noise, n, param, v);
    } else {
      f = cfi_scalar(state, d_rho(state, param), v, ones);
    }
    return f > 0.0 ? 1.0 / f : std::numeric_limits<double>::infinity();
  }

  // SeqTwoParam
  const Eigen::MatrixXcd v_re = transfer_matrix(state.index.n_re, u);
  const Eigen::MatrixXcd v_im = state.index.n_im > 0
                                    ? transfer_matrix(state.index.n_im, u)
                                    : Eigen::MatrixXcd::Ones(1, 1);
  FisherReport report;
  if (noise) {
    report = noisy_cfi_matrix_fd(spec, *noise, n, v_re, v_im);
  } else {
    report = cfi_matrix(state, d_rho(state, Param::Beta1), d_rho(state, Param::Beta2),
                        v_re, v_im);
  }
  return report.crb;
}

}  // namespace

CrbSeries crb_min_over_rounds(const ProtocolSpec& spec,
                              const std::optional<NoiseModel>& noise) {
  validate_spec(spec);
  const int rounds = spec.total_rounds();
  CrbSeries series;
  series.per_round.reserve(rounds);
  series.running_min.reserve(rounds);
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= rounds; ++n) {
    const double crb = prefix_crb(spec, n, noise);
    best = std::min(best, crb);
    series.per_round.push_back(crb);
    series.running_min.push_back(best);
  }
  return series;
}

std::vector<std::pair<double, double>> scaling_exponent(
    const std::vector<std::pair<double, double>>& f_samples) {
  if (f_samples.size() < 3) {
    throw std::invalid_argument("scaling_exponent: need at least 3 samples");
  }
  for (size_t i = 0; i < f_samples.size(); ++i) {
    if (f_samples[i].second <= 0.0) {
      throw std::invalid_argument("scaling_exponent: F values must be positive");
    }
    if (i > 0 && f_samples[i].first <= f_samples[i - 1].first) {
      throw std::invalid_argument("scaling_exponent: N must be strictly increasing");
    }
  }
  std::vector<std::pair<double, double>> result;
  for (size_t i = 1; i + 1 < f_samples.size(); ++i) {
    const double dlogf = std::log(f_samples[i + 1].second) - std::log(f_samples[i - 1].second);
    const double dlogn = std::log(f_samples[i + 1].first) - std::log(f_samples[i - 1].first);
    result.emplace_back(f_samples[i].first, dlogf / dlogn);
  }
  return result;
}

}  // namespace seqsense
