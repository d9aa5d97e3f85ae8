// SPDX-License-Identifier: Apache-2.0
#include "seqsense/oracle/grid_fixture.hpp"

#include <cmath>
#include <numbers>

#include "seqsense/builders.hpp"
#include "seqsense/oracle/fock.hpp"

namespace seqsense::oracle {

Eigen::Matrix4cd n1_reference_matrix(double alpha_mag) {
  const double A = alpha_mag * alpha_mag;
  const double x1 = std::exp(-2.0 * A);  // one-step Gaussian factor
  const double x2 = std::exp(-4.0 * A);
  auto e = [&](double mag, double phase) { return mag * std::polar(1.0, phase); };

  Eigen::Matrix4cd m;
  // rows/cols: (k_r,k_i) = (0,0), (0,1), (1,0), (1,1)
  m << 1.0,            e(x1, A),        e(x1, -A),       x2,
       e(x1, -A),      1.0,             e(x2, 2.0 * A),  e(x1, 3.0 * A),
       e(x1, A),       e(x2, -2.0 * A), 1.0,             e(x1, -3.0 * A),
       x2,             e(x1, -3.0 * A), e(x1, 3.0 * A),  1.0;
  return 0.25 * m;
}

GridStateFixture grid_state_check(double alpha_mag) {
  const ProtocolSpec spec = make_two_param_spec(1, Complex{0.0, 0.0}, alpha_mag);
  GridStateFixture fixture{build_two_param_rho(spec), alpha_mag,
                           2.0 * std::sin(alpha_mag * alpha_mag), 0.0};
  const Eigen::Matrix4cd ref = n1_reference_matrix(alpha_mag);
  fixture.max_pattern_deviation = (fixture.state.entries - ref).cwiseAbs().maxCoeff();
  return fixture;
}

GridStateFixture grid_state_fixture(int n) {
  if (n < 1) throw std::invalid_argument("grid_state_fixture: n must be >= 1");
  return grid_state_check(std::sqrt(n * std::numbers::pi));
}

double displacement_commutator_norm(int dim, double alpha_mag) {
  const Eigen::MatrixXcd dx = osc_displacement(dim, Complex{alpha_mag, 0.0});
  const Eigen::MatrixXcd dp = osc_displacement(dim, Complex{0.0, alpha_mag});
  const Eigen::MatrixXcd comm = dx * dp - dp * dx;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(comm);
  return svd.singularValues()(0);
}

}  // namespace seqsense::oracle
