// SPDX-License-Identifier: Apache-2.0
#include "seqsense/oracle/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <vector>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"

namespace seqsense::oracle {

namespace {

// a B, a^dag B, B a, B a^dag, n B, B n as O(dim^2) index shifts.
void apply_a_left(const Eigen::MatrixXcd& b, Eigen::MatrixXcd& out) {
  const int d = static_cast<int>(b.rows());
  out.setZero(d, b.cols());
  for (int i = 0; i + 1 < d; ++i) {
    out.row(i) = std::sqrt(static_cast<double>(i + 1)) * b.row(i + 1);
  }
}

void apply_adag_left(const Eigen::MatrixXcd& b, Eigen::MatrixXcd& out) {
  const int d = static_cast<int>(b.rows());
  out.setZero(d, b.cols());
  for (int i = 1; i < d; ++i) {
    out.row(i) = std::sqrt(static_cast<double>(i)) * b.row(i - 1);
  }
}

void apply_a_right(const Eigen::MatrixXcd& b, Eigen::MatrixXcd& out) {
  const int d = static_cast<int>(b.cols());
  out.setZero(b.rows(), d);
  for (int j = 1; j < d; ++j) {
    out.col(j) = std::sqrt(static_cast<double>(j)) * b.col(j - 1);
  }
}

void apply_adag_right(const Eigen::MatrixXcd& b, Eigen::MatrixXcd& out) {
  const int d = static_cast<int>(b.cols());
  out.setZero(b.rows(), d);
  for (int j = 0; j + 1 < d; ++j) {
    out.col(j) = std::sqrt(static_cast<double>(j + 1)) * b.col(j + 1);
  }
}

struct Rhs {
  NoiseModel noise;
  Complex lambda;
  mutable Eigen::MatrixXcd t1, t2, t3;

  void operator()(const Eigen::MatrixXcd& b, Eigen::MatrixXcd& out) const {
    const int d = static_cast<int>(b.rows());
    out.setZero(d, d);

    // Drive: -i[H, B] with H = i(lambda a^dag - conj(lambda) a)
    //  => lambda (a^dag B - B a^dag) - conj(lambda) (a B - B a).
    if (lambda != Complex{0.0, 0.0}) {
      apply_adag_left(b, t1);
      apply_adag_right(b, t2);
      out += lambda * (t1 - t2);
      apply_a_left(b, t1);
      apply_a_right(b, t2);
      out -= std::conj(lambda) * (t1 - t2);
    }

    const double down = noise.gamma * (1.0 + noise.n_th);
    if (down > 0.0) {
      apply_a_left(b, t1);
      apply_adag_right(t1, t2);  // a B a^dag
      out += down * t2;
      for (int i = 0; i < d; ++i) {
        out.row(i) -= 0.5 * down * static_cast<double>(i) * b.row(i);
        out.col(i) -= 0.5 * down * static_cast<double>(i) * b.col(i);
      }
    }
    const double up = noise.gamma * noise.n_th;
    if (up > 0.0) {
      apply_adag_left(b, t1);
      apply_a_right(t1, t2);  // a^dag B a
      out += up * t2;
      for (int i = 0; i < d; ++i) {
        out.row(i) -= 0.5 * up * static_cast<double>(i + 1) * b.row(i);
        out.col(i) -= 0.5 * up * static_cast<double>(i + 1) * b.col(i);
      }
    }
    if (noise.gamma_d > 0.0) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const double ni = static_cast<double>(i);
          const double nj = static_cast<double>(j);
          out(i, j) += noise.gamma_d * (ni * nj - 0.5 * (ni * ni + nj * nj)) * b(i, j);
        }
      }
    }
  }
};

Eigen::MatrixXcd rk4_run(const Rhs& rhs, Eigen::MatrixXcd b, double duration, int steps) {
  const double dt = duration / steps;
  const int d = static_cast<int>(b.rows());
  Eigen::MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  for (int s = 0; s < steps; ++s) {
    rhs(b, k1);
    tmp = b + 0.5 * dt * k1;
    rhs(tmp, k2);
    tmp = b + 0.5 * dt * k2;
    rhs(tmp, k3);
    tmp = b + dt * k3;
    rhs(tmp, k4);
    b += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return b;
}

}  // namespace

FockState make_vacuum_joint(int dim) {
  FockState state{dim, Eigen::MatrixXcd::Zero(2 * dim, 2 * dim)};
  state.rho(0, 0) = 1.0;  // |down, 0>
  return state;
}

Eigen::MatrixXcd osc_annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd osc_displacement(int dim, Complex x) {
  const Eigen::MatrixXcd a = osc_annihilation(dim);
  const Eigen::MatrixXcd gen = x * a.adjoint() - std::conj(x) * a;
  return gen.exp();
}

Eigen::VectorXcd coherent_vector(int dim, Complex mu) {
  Eigen::VectorXcd v(dim);
  // log-domain amplitudes mu^n/sqrt(n!) e^{-|mu|^2/2}
  Complex log_mu = (mu == Complex{0.0, 0.0}) ? Complex{0.0, 0.0} : std::log(mu);
  double log_fact = 0.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    if (mu == Complex{0.0, 0.0}) {
      v(n) = (n == 0) ? 1.0 : 0.0;
      continue;
    }
    const Complex log_amp = static_cast<double>(n) * log_mu - 0.5 * log_fact -
                            0.5 * abs2(mu);
    v(n) = std::exp(log_amp);
  }
  return v;
}

Eigen::VectorXd osc_populations(const Eigen::MatrixXcd& rho, int dim) {
  Eigen::VectorXd pops = Eigen::VectorXd::Zero(dim);
  const int blocks = static_cast<int>(rho.rows()) / dim;
  for (int q = 0; q < blocks; ++q) {
    for (int n = 0; n < dim; ++n) {
      pops(n) += rho(q * dim + n, q * dim + n).real();
    }
  }
  return pops;
}

void check_truncation(const Eigen::MatrixXcd& rho, int dim) {
  const Eigen::VectorXd pops = osc_populations(rho, dim);
  const int tail_start = dim - std::max(1, dim / 10);
  const double tail = pops.tail(dim - tail_start).sum();
  if (tail > 1e-6) {
    throw numerical_error("Fock truncation inadequate (tail population " +
                          std::to_string(tail) + "); increase dim beyond " +
                          std::to_string(dim));
  }
}

Eigen::MatrixXcd evolve_osc_operator(const Eigen::MatrixXcd& block, const NoiseModel& noise,
                                     Complex drive_rate, double duration, double tol) {
  if (duration < 0) throw std::invalid_argument("evolve_osc_operator: negative duration");
  if (duration == 0.0) return block;
  Rhs rhs{noise, drive_rate, {}, {}, {}};
  int steps = 32;
  Eigen::MatrixXcd coarse = rk4_run(rhs, block, duration, steps);
  for (; steps <= (1 << 20); steps *= 2) {
    Eigen::MatrixXcd fine = rk4_run(rhs, block, duration, 2 * steps);
    const double diff = (fine - coarse).cwiseAbs().maxCoeff();
    if (diff < tol) return fine;
    coarse.swap(fine);
  }
  throw numerical_error("evolve_osc_operator: step halving did not converge");
}

FockState fock_lindblad_evolve(const FockState& state, const NoiseModel& noise,
                               Complex drive_rate, double duration, double tol) {
  check_truncation(state.rho, state.dim);
  const int d = state.dim;
  FockState out{d, Eigen::MatrixXcd::Zero(2 * d, 2 * d)};
  for (int qa = 0; qa < 2; ++qa) {
    for (int qb = 0; qb < 2; ++qb) {
      out.rho.block(qa * d, qb * d, d, d) = evolve_osc_operator(
          state.rho.block(qa * d, qb * d, d, d), noise, drive_rate, duration, tol);
    }
  }
  const double tr_dev = std::abs(out.rho.trace() - state.rho.trace());
  if (tr_dev > 1e-9) {
    throw numerical_error("fock_lindblad_evolve: trace drifted by " + std::to_string(tr_dev));
  }
  check_truncation(out.rho, d);
  return out;
}

Complex mean_amplitude(const FockState& state) {
  const int d = state.dim;
  Complex acc{0.0, 0.0};
  for (int q = 0; q < 2; ++q) {
    acc += mean_amplitude_osc(state.rho.block(q * d, q * d, d, d));
  }
  return acc;
}

Complex mean_amplitude_osc(const Eigen::MatrixXcd& rho_osc) {
  const int d = static_cast<int>(rho_osc.rows());
  Complex acc{0.0, 0.0};
  // Tr(a rho) = sum_n sqrt(n+1) rho[n+1, n]
  for (int n = 0; n + 1 < d; ++n) {
    acc += std::sqrt(static_cast<double>(n + 1)) * rho_osc(n + 1, n);
  }
  return acc;
}

namespace {

Complex kick_of_bit(const ProtocolSpec& spec, int round_1based, int bit) {
  Complex alpha;
  if (spec.kind == ProtocolKind::SeqTwoParam) {
    const double a = std::abs(spec.schedule[0]);
    alpha = (round_1based % 2 == 1) ? Complex{a, 0.0} : Complex{0.0, a};
  } else {
    alpha = spec.schedule[0];
  }
  return (bit == 0) ? alpha : -alpha;
}

}  // namespace

Eigen::MatrixXcd sequential_fock_reference(const ProtocolSpec& spec, const NoiseModel& noise,
                                           int dim) {
  validate_spec(spec);
  if (spec.kind == ProtocolKind::SingleMeasurement) {
    throw std::invalid_argument("sequential_fock_reference: sequential kinds only");
  }
  const int rounds = spec.total_rounds();
  if (rounds > 10) {
    throw resource_error("sequential_fock_reference: rounds > 10");
  }

  const double q = noise.q();
  const Complex beta_d = round_displacement(spec.beta, noise);
  const Complex drive = (noise.t_round > 0.0) ? spec.beta / noise.t_round
                                              : Complex{0.0, 0.0};
  const double asq = abs2(spec.schedule[0]);
  const bool two_param = spec.kind == ProtocolKind::SeqTwoParam;

  // Displacements used by the kicks.
  const Eigen::MatrixXcd d_plus[2] = {
      osc_displacement(dim, kick_of_bit(spec, 1, 0)),
      osc_displacement(dim, kick_of_bit(spec, 2, 0))};

  std::vector<Eigen::MatrixXcd> blocks(1);
  blocks[0] = Eigen::MatrixXcd::Zero(dim, dim);
  blocks[0](0, 0) = 1.0;
  std::vector<Complex> ideal{Complex{0.0, 0.0}};  // per-branch model label

  int n_branches = 1;
  for (int r = 1; r <= rounds; ++r) {
    // Decay + drive segment, identical superoperator for every block.
    std::vector<Eigen::MatrixXcd> evolved(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
      evolved[i] = (noise.t_round > 0.0)
                       ? evolve_osc_operator(blocks[i], noise, drive, noise.t_round)
                       : blocks[i];
    }
    // Gauge the deterministic drive phase away (model convention).
    for (int b = 0; b < n_branches; ++b) {
      for (int bp = 0; bp < n_branches; ++bp) {
        const double phase =
            q * std::imag(std::conj(beta_d) * (ideal[b] - ideal[bp]));
        evolved[b * n_branches + bp] *= std::polar(1.0, phase);
      }
    }
    std::vector<Complex> ideal_mid(n_branches);
    for (int b = 0; b < n_branches; ++b) ideal_mid[b] = q * ideal[b] + beta_d;

    // Kick: each block spawns the four new-bit combinations.
    const Eigen::MatrixXcd& dp = two_param ? d_plus[(r - 1) % 2] : d_plus[0];
    const Eigen::MatrixXcd dm = dp.adjoint();  // D(-alpha)
    // Round r's outcome is bit r-1 of the record index.
    const int next_branches = 2 * n_branches;
    const int new_bit = 1 << (r - 1);
    std::vector<Eigen::MatrixXcd> next(static_cast<size_t>(next_branches) * next_branches);
    std::vector<Complex> ideal_next(next_branches);
    for (int b = 0; b < n_branches; ++b) {
      for (int s = 0; s < 2; ++s) {
        ideal_next[b | (s * new_bit)] = ideal_mid[b] + kick_of_bit(spec, r, s);
      }
    }
    for (int b = 0; b < n_branches; ++b) {
      for (int bp = 0; bp < n_branches; ++bp) {
        const Eigen::MatrixXcd& src = evolved[b * n_branches + bp];
        for (int s = 0; s < 2; ++s) {
          const Eigen::MatrixXcd left = (s == 0 ? dp : dm) * src;
          for (int sp = 0; sp < 2; ++sp) {
            Eigen::MatrixXcd blk = 0.5 * left * (sp == 0 ? dp : dm).adjoint();
            // Remove the kick displacement phases about the model labels.
            double phase = -std::imag(kick_of_bit(spec, r, s) * std::conj(ideal_mid[b])) +
                           std::imag(kick_of_bit(spec, r, sp) * std::conj(ideal_mid[bp]));
            // Two-parameter per-bit gauge.
            if (two_param) {
              const double sign = (r % 2 == 1) ? -1.0 : 1.0;  // -A per odd-round 1-bit
              phase += sign * asq * (s - sp);
            }
            blk *= std::polar(1.0, phase);
            next[(b | (s * new_bit)) * next_branches + (bp | (sp * new_bit))] =
                std::move(blk);
          }
        }
      }
    }
    blocks.swap(next);
    ideal.swap(ideal_next);
    n_branches = next_branches;
  }

  Eigen::MatrixXcd record(n_branches, n_branches);
  for (int b = 0; b < n_branches; ++b) {
    for (int bp = 0; bp < n_branches; ++bp) {
      record(b, bp) = blocks[b * n_branches + bp].trace();
    }
  }
  return record;
}

std::vector<double> single_fock_pdown_series(Complex beta, Complex alpha_kick,
                                             const NoiseModel& noise, int n_max, int dim) {
  const Complex drive = (noise.t_round > 0.0) ? beta / noise.t_round : Complex{0.0, 0.0};
  const Eigen::MatrixXcd d2a = osc_displacement(dim, 2.0 * alpha_kick);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = 1.0;

  const double q = noise.q();
  const Complex beta_d = round_displacement(beta, noise);
  Complex ideal{0.0, 0.0};

  std::vector<double> p_down;
  p_down.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    rho = evolve_osc_operator(rho, noise, drive, noise.t_round);
    check_truncation(rho, dim);
    ideal = q * ideal + beta_d;
    // Model-gauge readout: p = 1/2 [1 + Re(e^{-2i Im(alpha conj(c))} Tr(D(2 alpha) rho))].
    const Complex chi = (d2a * rho).trace();
    const double gauge = -2.0 * std::imag(alpha_kick * std::conj(ideal));
    p_down.push_back(0.5 * (1.0 + (std::polar(1.0, gauge) * chi).real()));
  }
  return p_down;
}

}  // namespace seqsense::oracle
