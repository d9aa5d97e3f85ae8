// SPDX-License-Identifier: Apache-2.0
#include "seqsense/oracle/sampler.hpp"

#include <cmath>
#include <random>

#include "seqsense/builders.hpp"
#include "seqsense/constants.hpp"
#include "seqsense/distribution.hpp"
#include "seqsense/errors.hpp"
#include "seqsense/noisy.hpp"
#include "seqsense/transfer.hpp"

namespace seqsense::oracle {

namespace {

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

struct PrefixTables {
  // log record-prefix probability by (round, linear weight index); round r
  // uses the r-round prefix state's weight distribution divided by the
  // number of records in the weight class.
  std::vector<std::vector<double>> log_record;
  std::vector<HammingIndex> index;
};

PrefixTables build_tables(const ProtocolSpec& spec,
                          const std::optional<NoiseModel>& noise) {
  const int rounds = spec.total_rounds();
  const Eigen::Matrix2cd u = computational_basis_unitary();
  PrefixTables tables;
  tables.log_record.resize(rounds + 1);
  tables.index.resize(rounds + 1);
  for (int r = 1; r <= rounds; ++r) {
    const AncillaState state = noise ? symmetric_noisy_prefix(spec, *noise, r)
                                     : build_prefix_rho(spec, r);
    const Eigen::MatrixXcd v_re = transfer_matrix(state.index.n_re, u);
    const Eigen::MatrixXcd v_im = state.index.n_im > 0
                                      ? transfer_matrix(state.index.n_im, u)
                                      : Eigen::MatrixXcd::Ones(1, 1);
    const OutcomeDistribution dist = outcome_distribution(state, v_re, v_im);
    tables.index[r] = state.index;
    tables.log_record[r].resize(dist.p.size());
    for (size_t j = 0; j < dist.p.size(); ++j) {
      const int kr = state.index.k_re(static_cast<int>(j));
      const int ki = state.index.k_im(static_cast<int>(j));
      const double log_count =
          log_binom(state.index.n_re, kr) +
          (state.index.n_im > 0 ? log_binom(state.index.n_im, ki) : 0.0);
      tables.log_record[r][j] =
          dist.p[j] > 0.0 ? std::log(dist.p[j]) - log_count
                          : -std::numeric_limits<double>::infinity();
    }
  }
  return tables;
}

}  // namespace

std::vector<std::uint32_t> sample_trajectories(const ProtocolSpec& spec,
                                               const std::optional<NoiseModel>& noise,
                                               std::uint64_t seed, int count) {
  validate_spec(spec);
  if (count < 1) throw std::invalid_argument("sample_trajectories: count must be >= 1");
  const int rounds = spec.total_rounds();
  if (rounds > 31 || (spec.kind == ProtocolKind::SingleMeasurement && rounds > 31)) {
    throw resource_error("sample_trajectories: too many rounds for 32-bit records");
  }

  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  PrefixTables tables;
  if (spec.kind == ProtocolKind::SingleMeasurement) {
    // One terminal measurement: sample directly from the final distribution.
    ProtocolSpec full = spec;
    tables = build_tables(full, noise);
  } else {
    tables = build_tables(spec, noise);
  }

  std::mt19937_64 rng(seed);
  const auto next_uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  std::vector<std::uint32_t> records(count, 0u);
  for (int i = 0; i < count; ++i) {
    std::uint32_t bits = 0;
    int wr = 0, wi = 0;
    if (spec.kind == ProtocolKind::SingleMeasurement) {
      const auto& lr = tables.log_record[spec.total_rounds()];
      const double p1 = std::exp(lr[1]);  // weight-1 class of the 2x2 record
      bits = (next_uniform() < p1) ? 1u : 0u;
      records[i] = bits;
      continue;
    }
    for (int r = 1; r <= rounds; ++r) {
      const bool re_round = spec.kind != ProtocolKind::SeqTwoParam || (r % 2 == 1);
      const HammingIndex& idx = tables.index[r];
      const auto& lr = tables.log_record[r];
      const int i0 = idx.linear(wr, wi);
      const int i1 = re_round ? idx.linear(wr + 1, wi) : idx.linear(wr, wi + 1);
      const double l0 = lr[i0];
      const double l1 = lr[i1];
      double p1;
      if (std::isinf(l1)) {
        p1 = 0.0;
      } else if (std::isinf(l0)) {
        p1 = 1.0;
      } else {
        const double m = std::max(l0, l1);
        p1 = std::exp(l1 - m) / (std::exp(l0 - m) + std::exp(l1 - m));
      }
      if (next_uniform() < p1) {
        bits |= 1u << (r - 1);
        (re_round ? wr : wi) += 1;
      }
    }
    records[i] = bits;
  }
  (void)n_bits;
  return records;
}

std::vector<double> weight_histogram(const ProtocolSpec& spec,
                                     const std::vector<std::uint32_t>& records) {
  const int rounds = spec.total_rounds();
  const bool two_param = spec.kind == ProtocolKind::SeqTwoParam;
  const int n_bits = spec.kind == ProtocolKind::SingleMeasurement ? 1 : rounds;
  const HammingIndex idx = two_param ? HammingIndex{(rounds + 1) / 2, rounds / 2}
                                     : HammingIndex{n_bits, 0};
  std::vector<double> hist(idx.dim(), 0.0);
  for (std::uint32_t rec : records) {
    int wr = 0, wi = 0;
    for (int bit = 0; bit < n_bits; ++bit) {
      if ((rec >> bit) & 1) {
        if (two_param && bit % 2 == 1) {
          ++wi;
        } else {
          ++wr;
        }
      }
    }
    hist[idx.linear(wr, wi)] += 1.0;
  }
  for (double& h : hist) h /= static_cast<double>(records.size());
  return hist;
}

}  // namespace seqsense::oracle
