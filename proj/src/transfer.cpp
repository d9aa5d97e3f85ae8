// SPDX-License-Identifier: Apache-2.0
#include "seqsense/transfer.hpp"

#include <cmath>

#include "seqsense/errors.hpp"

namespace seqsense {

Eigen::Matrix2cd computational_basis_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  u << s, s, -s, s;
  return u;
}

Eigen::MatrixXcd transfer_matrix(int N, const Eigen::Matrix2cd& u) {
  if (N < 1) throw std::invalid_argument("transfer_matrix: N must be >= 1");
  const double unit_dev =
      (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (unit_dev > 1e-12) {
    throw std::invalid_argument("transfer_matrix: u is not unitary");
  }

  // V^(n) from V^(n-1) by splitting off the last qubit of both Dicke states.
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Ones(1, 1);
  for (int n = 1; n <= N; ++n) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    const double dn = static_cast<double>(n);
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j <= n; ++j) {
        Complex acc{0.0, 0.0};
        if (k < n && j < n)
          acc += std::sqrt((dn - k) * (dn - j)) * u(0, 0) * v(k, j);
        if (k < n && j > 0)
          acc += std::sqrt((dn - k) * j) * u(1, 0) * v(k, j - 1);
        if (k > 0 && j < n)
          acc += std::sqrt(static_cast<double>(k) * (dn - j)) * u(0, 1) * v(k - 1, j);
        if (k > 0 && j > 0)
          acc += std::sqrt(static_cast<double>(k) * j) * u(1, 1) * v(k - 1, j - 1);
        next(k, j) = acc / dn;
      }
    }
    v.swap(next);
  }
  return v;
}

}  // namespace seqsense
