// SPDX-License-Identifier: Apache-2.0
#include "seqsense/distribution.hpp"

#include <cmath>
#include <numeric>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"

namespace seqsense {

double OutcomeDistribution::total() const {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

std::vector<double> rotated_diagonal(const Eigen::MatrixXcd& m,
                                     const HammingIndex& index,
                                     const Eigen::MatrixXcd& v_re,
                                     const Eigen::MatrixXcd& v_im) {
  const int dr = index.n_re + 1;
  const int di = index.n_im + 1;
  const int d = dr * di;
  if (m.rows() != d || m.cols() != d || v_re.rows() != dr || v_im.rows() != di) {
    throw std::invalid_argument("rotated_diagonal: dimension mismatch");
  }

  // m2 = m (v_re (x) v_im), contracted one index at a time.
  Eigen::MatrixXcd m2(d, d);
  Eigen::VectorXcd scratch(d);
  for (int a = 0; a < d; ++a) {
    for (int kr = 0; kr < dr; ++kr) {
      scratch.segment(kr * di, di).transpose() =
          m.row(a).segment(kr * di, di) * v_im;
    }
    Eigen::Map<const Eigen::MatrixXcd> c(scratch.data(), di, dr);
    // columns grouped as (kr', ji'): rotate the kr' mode.
    Eigen::MatrixXcd rotated = c * v_re;          // (ji', jr')
    for (int jr = 0; jr < dr; ++jr) {
      m2.row(a).segment(jr * di, di) = rotated.col(jr).transpose();
    }
  }

  std::vector<double> diag(d, 0.0);
  for (int j = 0; j < d; ++j) {
    const int jr = j / di;
    const int ji = j % di;
    Complex acc{0.0, 0.0};
    for (int kr = 0; kr < dr; ++kr) {
      const Complex wr = std::conj(v_re(kr, jr));
      for (int ki = 0; ki < di; ++ki) {
        acc += wr * std::conj(v_im(ki, ji)) * m2(kr * di + ki, j);
      }
    }
    diag[j] = acc.real();
  }
  return diag;
}

namespace {

OutcomeDistribution finalize(std::vector<double> p, const HammingIndex& index) {
  double mean = 0.0;
  for (int j = 0; j < static_cast<int>(p.size()); ++j) {
    if (p[j] < -PROB_FAIL) {
      throw numerical_error("outcome_distribution: probability below -1e-8");
    }
    if (p[j] < 0.0) p[j] = 0.0;
    mean += p[j] * (index.k_re(j) + index.k_im(j));
  }
  const double rounds = static_cast<double>(index.n_re + index.n_im);
  OutcomeDistribution dist{std::move(p), index, mean / rounds};
  if (std::abs(dist.total() - 1.0) > 1e-10) {
    throw numerical_error("outcome_distribution: normalization failure");
  }
  return dist;
}

}  // namespace

OutcomeDistribution outcome_distribution(const AncillaState& state,
                                         const Eigen::MatrixXcd& v_re,
                                         const Eigen::MatrixXcd& v_im) {
  return finalize(rotated_diagonal(state.entries, state.index, v_re, v_im),
                  state.index);
}

OutcomeDistribution outcome_distribution(const AncillaState& state,
                                         const Eigen::MatrixXcd& v) {
  if (state.index.n_im != 0) {
    throw std::invalid_argument(
        "outcome_distribution: two-parameter state needs one transfer matrix per quadrature");
  }
  const Eigen::MatrixXcd v_im = Eigen::MatrixXcd::Ones(1, 1);
  return finalize(rotated_diagonal(state.entries, state.index, v, v_im), state.index);
}

}  // namespace seqsense
