// SPDX-License-Identifier: Apache-2.0
#include "seqsense/cli/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <json.hpp>

#include "seqsense/constants.hpp"
#include "seqsense/errors.hpp"
#include "seqsense/fisher.hpp"
#include "seqsense/noisy.hpp"
#include "seqsense/oracle/brute_force.hpp"
#include "seqsense/oracle/grid_fixture.hpp"
#include "seqsense/oracle/sampler.hpp"
#include "seqsense/version.hpp"

namespace seqsense::cli {

namespace {

using nlohmann::json;

// Deterministic number formatting: scientific below 1e-4, %.12g otherwise.
std::string fmt_number(double x) {
  char buf[64];
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::abs(x) < 1e-4) {
    std::snprintf(buf, sizeof(buf), "%.12e", x);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12g", x);
  }
  return buf;
}

std::string fmt_int(long long x) { return std::to_string(x); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json metadata;
};

void write_table(const Table& table, const RunOptions& options) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!options.out_path.empty()) {
    file.open(options.out_path);
    if (!file) throw config_error("cannot open output path '" + options.out_path + "'");
    out = &file;
  }
  if (options.format == "json") {
    json doc;
    doc["metadata"] = table.metadata;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    *out << doc.dump(2) << "\n";
    return;
  }
  *out << "# " << table.metadata.dump() << "\n";
  for (size_t c = 0; c < table.columns.size(); ++c) {
    *out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
  }
  *out << "\n";
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      *out << row[c] << (c + 1 < row.size() ? "," : "");
    }
    *out << "\n";
  }
}

json base_metadata(const RunOptions& options) {
  json meta;
  meta["experiment"] = options.experiment;
  meta["artifact_version"] = kVersion;
  meta["workers"] = options.workers;
  meta["format"] = options.format;
  meta["full_scale"] = options.full_scale;
  meta["timestamp"] = static_cast<long long>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  json cfg = json::object();
  for (const auto& [k, v] : options.config.entries()) cfg[k] = v;
  meta["config"] = cfg;
  return meta;
}

// Order-stable fan-out: task i writes slot i.
void parallel_for(int n_tasks, int workers, const std::function<void(int)>& task) {
  if (workers <= 1 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const int count = std::min(workers, n_tasks);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n_tasks) return;
        try {
          task(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out(steps);
  if (steps == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < steps; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
  return out;
}

double seq_qfi(int n, double alpha_mag, Complex beta) {
  const ProtocolSpec spec = make_seq_spec(n, beta, Complex{0.0, alpha_mag});
  const AncillaState state = build_seq_rho(spec);
  return qfi_scalar(state, d_rho(state, Param::Beta1));
}

double single_qfi(int n, double alpha_mag, Complex beta) {
  const ProtocolSpec spec = make_single_spec(n, beta, Complex{0.0, alpha_mag});
  const AncillaState state = build_single_rho(spec);
  return qfi_scalar(state, d_rho(state, Param::Beta1));
}

int run_qfi_sweep(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  std::vector<double> n_list = cfg.get_list("grid.N_list", {{410.0, 450.0, 500.0}});
  const double alpha_min = cfg.get_double("grid.alpha_min", 0.05);
  const double alpha_max = cfg.get_double("grid.alpha_max", 1.0);
  const int alpha_steps = cfg.get_int("grid.alpha_steps", 40);
  const Complex beta{cfg.get_double("signal.beta1", 0.0), cfg.get_double("signal.beta2", 0.0)};
  cfg.reject_unknown_keys();

  const std::vector<double> alphas = linspace(alpha_min, alpha_max, alpha_steps);
  struct Point {
    std::string protocol;
    int n;
    double alpha;
    double qfi;
  };
  std::vector<Point> points;
  for (double n : n_list) {
    for (double a : alphas) {
      points.push_back({"single", static_cast<int>(n), a, 0.0});
      points.push_back({"sequential", static_cast<int>(n), a, 0.0});
    }
  }
  parallel_for(static_cast<int>(points.size()), options.workers, [&](int i) {
    Point& p = points[i];
    p.qfi = p.protocol == "single" ? single_qfi(p.n, p.alpha, beta)
                                   : seq_qfi(p.n, p.alpha, beta);
  });

  table.columns = {"protocol", "N", "alpha", "qfi"};
  for (const Point& p : points) {
    table.rows.push_back({p.protocol, fmt_int(p.n), fmt_number(p.alpha), fmt_number(p.qfi)});
  }
  return 0;
}

int run_scaling_map(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  std::vector<double> n_list =
      cfg.get_list("grid.N_list", {{50, 71, 100, 141, 200, 283, 400, 566, 800}});
  std::vector<double> alpha_list =
      cfg.get_list("grid.alpha_list", {{0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.8}});
  cfg.reject_unknown_keys();

  const int rows = static_cast<int>(n_list.size());
  const int cols = static_cast<int>(alpha_list.size());
  std::vector<double> qfi(rows * cols, 0.0);
  parallel_for(rows * cols, options.workers, [&](int i) {
    const int r = i / cols;
    const int c = i % cols;
    qfi[i] = seq_qfi(static_cast<int>(n_list[r]), alpha_list[c], Complex{0.0, 0.0});
  });

  table.columns = {"alpha", "N", "N_alpha2", "qfi", "p"};
  for (int c = 0; c < cols; ++c) {
    std::vector<std::pair<double, double>> samples;
    for (int r = 0; r < rows; ++r) samples.emplace_back(n_list[r], qfi[r * cols + c]);
    const auto exponents = scaling_exponent(samples);
    for (int r = 0; r < rows; ++r) {
      std::string p = "";
      if (r > 0 && r + 1 < rows) p = fmt_number(exponents[r - 1].second);
      table.rows.push_back({fmt_number(alpha_list[c]), fmt_int(static_cast<int>(n_list[r])),
                            fmt_number(n_list[r] * alpha_list[c] * alpha_list[c]),
                            fmt_number(qfi[r * cols + c]), p});
    }
  }
  return 0;
}

int run_two_param_compare(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  // Desk-scale default; the full-size run is behind --full-scale.
  int n = cfg.get_int("grid.N", options.full_scale ? 100 : 24);
  const double alpha_min = cfg.get_double("grid.alpha_min", 0.05);
  const double alpha_max = cfg.get_double("grid.alpha_max", 1.0);
  const int alpha_steps = cfg.get_int("grid.alpha_steps", 40);
  cfg.reject_unknown_keys();
  if (options.full_scale) {
    std::cerr << "warning: full-scale two-parameter run ((N+1)^2 eigensolves, N=" << n
              << "); this takes a while\n";
  }

  const std::vector<double> alphas = linspace(alpha_min, alpha_max, alpha_steps);
  struct Point {
    double alpha;
    double one_n, one_2n, two_f11, two_f22;
  };
  std::vector<Point> points(alphas.size());
  parallel_for(static_cast<int>(alphas.size()), options.workers, [&](int i) {
    const double a = alphas[i];
    Point& p = points[i];
    p.alpha = a;
    p.one_n = seq_qfi(n, a, Complex{0.0, 0.0});
    p.one_2n = seq_qfi(2 * n, a, Complex{0.0, 0.0});
    const ProtocolSpec spec = make_two_param_spec(n, Complex{0.0, 0.0}, a);
    const AncillaState state = build_two_param_rho(spec);
    const FisherReport rep =
        qfi_matrix(state, d_rho(state, Param::Beta1), d_rho(state, Param::Beta2));
    p.two_f11 = rep.qfi(0, 0);
    p.two_f22 = rep.qfi(1, 1);
  });

  table.columns = {"curve", "N", "alpha", "qfi"};
  for (const Point& p : points) {
    table.rows.push_back({"one_param_N", fmt_int(n), fmt_number(p.alpha), fmt_number(p.one_n)});
    table.rows.push_back(
        {"one_param_2N", fmt_int(2 * n), fmt_number(p.alpha), fmt_number(p.one_2n)});
    table.rows.push_back({"two_param_F11", fmt_int(n), fmt_number(p.alpha), fmt_number(p.two_f11)});
    table.rows.push_back({"two_param_F22", fmt_int(n), fmt_number(p.alpha), fmt_number(p.two_f22)});
  }
  return 0;
}

int run_cfi_saturation(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  const double alpha = cfg.get_double("grid.alpha", 0.2);
  std::vector<double> beta1_list = cfg.get_list("signal.beta1_list", {{0.05, 0.1}});
  const int n_max = cfg.get_int("grid.N_max", 100);
  cfg.reject_unknown_keys();

  const Eigen::Matrix2cd u = computational_basis_unitary();
  struct Point {
    double beta1;
    int n;
    double cfi, qfi, mean_excitation;
  };
  std::vector<Point> points;
  for (double b1 : beta1_list) {
    for (int n = 1; n <= n_max; ++n) points.push_back({b1, n, 0, 0, 0});
  }
  parallel_for(static_cast<int>(points.size()), options.workers, [&](int i) {
    Point& p = points[i];
    const ProtocolSpec spec = make_seq_spec(p.n, Complex{p.beta1, 0.0}, Complex{0.0, alpha});
    const AncillaState state = build_seq_rho(spec);
    const StateDerivative d = d_rho(state, Param::Beta1);
    p.qfi = qfi_scalar(state, d);
    const Eigen::MatrixXcd v = transfer_matrix(p.n, u);
    const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(1, 1);
    p.cfi = cfi_scalar(state, d, v, ones);
    p.mean_excitation = outcome_distribution(state, v).mean_excitation;
  });

  table.columns = {"beta1", "N", "cfi", "qfi", "ratio", "mean_excitation"};
  for (const Point& p : points) {
    table.rows.push_back({fmt_number(p.beta1), fmt_int(p.n), fmt_number(p.cfi),
                          fmt_number(p.qfi), fmt_number(p.cfi / p.qfi),
                          fmt_number(p.mean_excitation)});
  }
  return 0;
}

int run_crb_map(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  const double alpha = cfg.get_double("grid.alpha", 0.2);
  const int n = cfg.get_int("grid.N", 20);
  const double beta_min = cfg.get_double("grid.beta_abs_min", 0.02);
  const double beta_max = cfg.get_double("grid.beta_abs_max", 0.5);
  const int beta_steps = cfg.get_int("grid.beta_steps", 21);
  const int phase_steps = cfg.get_int("grid.phase_steps", 21);
  cfg.reject_unknown_keys();

  const std::vector<double> mags = linspace(beta_min, beta_max, beta_steps);
  const std::vector<double> phases = linspace(0.0, std::numbers::pi / 2.0, phase_steps);

  struct Point {
    double mag, phase;
    double seq_min, seq_final, single;
  };
  std::vector<Point> points;
  for (double m : mags) {
    for (double ph : phases) points.push_back({m, ph, 0, 0, 0});
  }
  parallel_for(static_cast<int>(points.size()), options.workers, [&](int i) {
    Point& p = points[i];
    const Complex beta = std::polar(p.mag, p.phase);
    const ProtocolSpec seq = make_two_param_spec(n, beta, alpha);
    const CrbSeries series = crb_min_over_rounds(seq);
    p.seq_min = series.running_min.back();
    p.seq_final = series.per_round.back();
    const ProtocolSpec single = make_single_spec(n, beta, Complex{alpha, 0.0});
    const CrbSeries single_series = crb_min_over_rounds(single);
    p.single = single_series.per_round.back();
  });

  table.columns = {"beta_abs",  "phase",        "beta1",     "beta2",
                   "seq_crb_min", "seq_crb_final", "single_crb"};
  for (const Point& p : points) {
    const Complex beta = std::polar(p.mag, p.phase);
    table.rows.push_back({fmt_number(p.mag), fmt_number(p.phase), fmt_number(beta.real()),
                          fmt_number(beta.imag()), fmt_number(p.seq_min),
                          fmt_number(p.seq_final), fmt_number(p.single)});
  }
  return 0;
}

int run_decoherence(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  const double beta1 = cfg.get_double("signal.beta1", 0.3536);
  const double beta2 = cfg.get_double("signal.beta2", 0.3536);
  const double alpha = cfg.get_double("grid.alpha", 0.4);
  const int rounds_max = cfg.get_int("grid.rounds_max", 14);
  const Complex beta{beta1, beta2};
  // Caption-style parameterization: Gamma plus tau_eff fix the round time;
  // the loss/dephasing split defaults to equal.
  const double big_gamma = cfg.get_double("noise.Gamma", 1.89e4);
  const double tau_eff = cfg.get_double("noise.tau_eff", 0.15);
  const double split = cfg.get_double("noise.loss_fraction", 0.5);
  const double t_round = 2.0 * tau_eff / big_gamma;
  const double g = std::sqrt(2.0) * std::abs(beta) / t_round;
  const NoiseModel noise =
      make_noise(split * big_gamma, (1.0 - split) * big_gamma, 0.0, t_round, g);
  cfg.reject_unknown_keys();

  const ProtocolSpec spec = make_two_param_spec((rounds_max + 1) / 2, beta, alpha);
  const NoisyCrbCurves curves = noisy_crb_curve(spec, noise, rounds_max);

  table.columns = {"protocol", "round", "time", "crb", "crb_running_min"};
  for (int r = 0; r < rounds_max; ++r) {
    table.rows.push_back({"sequential", fmt_int(r + 1), fmt_number(curves.time[r]),
                          fmt_number(curves.seq_crb[r]),
                          fmt_number(curves.seq_running_min[r])});
  }
  for (int r = 0; r < rounds_max; ++r) {
    table.rows.push_back({"single", fmt_int(r + 1), fmt_number(curves.time[r]),
                          fmt_number(curves.single_crb[r]), ""});
  }
  return 0;
}

int run_sample(const RunOptions& options, Table& table) {
  const Config& cfg = options.config;
  const int n = cfg.get_int("grid.N", 6);
  const double alpha = cfg.get_double("grid.alpha", 0.2);
  const double beta1 = cfg.get_double("signal.beta1", 0.1);
  const int count = cfg.get_int("sample.count", 100000);
  const bool emit_records = cfg.get_bool("sample.emit_records", false);
  cfg.reject_unknown_keys();

  const ProtocolSpec spec = make_seq_spec(n, Complex{beta1, 0.0}, Complex{0.0, alpha});
  const auto records = oracle::sample_trajectories(spec, std::nullopt, options.seed, count);
  const auto hist = oracle::weight_histogram(spec, records);
  const auto exact = oracle::brute_force_seq(spec).z_distribution;

  if (emit_records) {
    table.columns = {"sample", "record"};
    for (size_t i = 0; i < records.size(); ++i) {
      std::string bits(n, '0');
      for (int b = 0; b < n; ++b) {
        if ((records[i] >> b) & 1u) bits[b] = '1';
      }
      table.rows.push_back({fmt_int(static_cast<long long>(i)), bits});
    }
    return 0;
  }
  table.columns = {"k", "count", "frequency", "exact_probability"};
  for (int k = 0; k <= n; ++k) {
    table.rows.push_back({fmt_int(k),
                          fmt_int(static_cast<long long>(std::llround(hist[k] * count))),
                          fmt_number(hist[k]), fmt_number(exact[k])});
  }
  return 0;
}

struct ValidationCheck {
  std::string name;
  bool pass;
  std::string detail;
};

int run_validate(const RunOptions& options, Table& table) {
  options.config.reject_unknown_keys();
  std::vector<ValidationCheck> checks;
  auto add = [&](const std::string& name, bool pass, double value, double bound) {
    checks.push_back({name, pass,
                      "value=" + fmt_number(value) + " bound=" + fmt_number(bound)});
  };

  // Oracle equivalence across protocols, fixed-seed random draws.
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ub(-0.3, 0.3);
    std::uniform_real_distribution<double> ua(0.05, 0.6);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const Complex beta{ub(rng), ub(rng)};
      const double a = ua(rng);
      const int n1 = 2 + static_cast<int>(rng() % 7);
      const ProtocolSpec seq = make_seq_spec(n1, beta, Complex{0.0, a});
      worst = std::max(worst, (oracle::brute_force_seq(seq).grouped.entries -
                               build_seq_rho(seq).entries)
                                  .cwiseAbs()
                                  .maxCoeff());
      const int n2 = 1 + static_cast<int>(rng() % 4);
      const ProtocolSpec two = make_two_param_spec(n2, beta, a);
      worst = std::max(worst, (oracle::brute_force_seq(two).grouped.entries -
                               build_two_param_rho(two).entries)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    add("oracle_equivalence", worst < 1e-12, worst, 1e-12);
  }
  // Closed-form single-measurement QFI.
  {
    double worst = 0.0;
    for (int n : {1, 10, 100}) {
      for (double a : {0.1, 0.5, 1.0}) {
        const double expect = 4.0 * n * n * a * a * std::exp(-4.0 * a * a);
        const double got = single_qfi(n, a, Complex{0.0, 0.0});
        worst = std::max(worst, std::abs(got - expect) / expect);
      }
    }
    add("single_qfi_closed_form", worst < 1e-8, worst, 1e-8);
  }
  // Joint-state closed forms.
  {
    const double f = joint_qfi_closed_form(ProtocolKind::SeqOneParam, 5,
                                           std::vector<Complex>(5, Complex{0.3, 0.0}));
    add("joint_qfi_seq", std::abs(f - 145.0) < 1e-9, f, 145.0);
    const double fs = joint_qfi_closed_form(ProtocolKind::SingleMeasurement, 10,
                                            {Complex{0.5, 0.0}});
    add("joint_qfi_single", std::abs(fs - 500.0) < 1e-9, fs, 500.0);
  }
  // Grid-state fixture.
  {
    const auto fix = oracle::grid_state_fixture(1);
    add("grid_fixture_pattern", fix.max_pattern_deviation < 1e-12, fix.max_pattern_deviation,
        1e-12);
    add("grid_fixture_commutator", std::abs(fix.commutator_coefficient) < 1e-12,
        std::abs(fix.commutator_coefficient), 1e-12);
  }
  // Transfer-matrix unitarity at N=200.
  {
    const Eigen::MatrixXcd v = transfer_matrix(200, computational_basis_unitary());
    const double dev =
        (v * v.adjoint() - Eigen::MatrixXcd::Identity(201, 201)).cwiseAbs().maxCoeff();
    add("transfer_unitarity_N200", dev < 1e-10, dev, 1e-10);
  }
  // CFI <= QFI spot check.
  {
    const ProtocolSpec spec = make_seq_spec(40, Complex{0.07, 0.0}, Complex{0.0, 0.2});
    const AncillaState state = build_seq_rho(spec);
    const StateDerivative d = d_rho(state, Param::Beta1);
    const double qfi = qfi_scalar(state, d);
    const double cfi = cfi_scalar(state, d, transfer_matrix(40, computational_basis_unitary()),
                                  Eigen::MatrixXcd::Ones(1, 1));
    add("cfi_below_qfi", cfi <= qfi * (1.0 + 1e-9), cfi / qfi, 1.0);
  }

  table.columns = {"check", "status", "detail"};
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    table.rows.push_back({c.name, c.pass ? "pass" : "FAIL", c.detail});
  }
  return all ? 0 : 1;
}

}  // namespace

int run(const RunOptions& options) {
  try {
    Table table;
    table.metadata = base_metadata(options);
    int status = 0;
    if (options.experiment == "qfi-sweep") {
      status = run_qfi_sweep(options, table);
    } else if (options.experiment == "scaling-map") {
      status = run_scaling_map(options, table);
    } else if (options.experiment == "two-param-compare") {
      status = run_two_param_compare(options, table);
    } else if (options.experiment == "cfi-saturation") {
      status = run_cfi_saturation(options, table);
    } else if (options.experiment == "crb-map") {
      status = run_crb_map(options, table);
    } else if (options.experiment == "decoherence") {
      status = run_decoherence(options, table);
    } else if (options.experiment == "validate") {
      status = run_validate(options, table);
    } else if (options.experiment == "sample") {
      status = run_sample(options, table);
    } else {
      throw config_error("unknown experiment '" + options.experiment + "'");
    }
    write_table(table, options);
    return status;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace seqsense::cli
