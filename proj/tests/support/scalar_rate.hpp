// Copyright 2026 The risopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "risopt/channel.hpp"

namespace risopt::testing_support {

/// Sum spectral efficiency for K = 2 users with plain loops and a closed-form
/// 2x2 inverse; column-normalized RZF, equal power split.
inline double scalar_spectral_efficiency(const std::vector<int>& indices, int levels,
                                         const ChannelPair& ch, const SystemConfig& cfg) {
  using C = std::complex<double>;
  const int n_el = static_cast<int>(ch.g.rows());
  const int m_ant = static_cast<int>(ch.g.cols());
  if (ch.h.cols() != 2) throw std::invalid_argument("scalar oracle supports two users");

  // hr[k][m] = sum_n h(n,k) * beta e^{j theta_n} * g(n,m)
  std::vector<std::vector<C>> hr(2, std::vector<C>(m_ant));
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < m_ant; ++m) {
      C acc = 0;
      for (int n = 0; n < n_el; ++n) {
        const double theta = 2.0 * M_PI * indices[n] / levels;
        acc += ch.h(n, k) * (cfg.amplitude * C(std::cos(theta), std::sin(theta))) * ch.g(n, m);
      }
      hr[k][m] = acc;
    }

  const double kappa = cfg.regularization();
  // A = H H^H + kappa I (2x2 Hermitian)
  C a[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      C s = 0;
      for (int m = 0; m < m_ant; ++m) s += hr[i][m] * std::conj(hr[j][m]);
      a[i][j] = s + (i == j ? kappa : 0.0);
    }
  const C det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const C inv[2][2] = {{a[1][1] / det, -a[0][1] / det}, {-a[1][0] / det, a[0][0] / det}};

  // W = H^H A^{-1}, then unit-norm columns.
  std::vector<std::vector<C>> w(m_ant, std::vector<C>(2));
  for (int m = 0; m < m_ant; ++m)
    for (int k = 0; k < 2; ++k) w[m][k] = std::conj(hr[0][m]) * inv[0][k] + std::conj(hr[1][m]) * inv[1][k];
  for (int k = 0; k < 2; ++k) {
    double norm = 0;
    for (int m = 0; m < m_ant; ++m) norm += std::norm(w[m][k]);
    norm = std::sqrt(norm);
    for (int m = 0; m < m_ant; ++m) w[m][k] /= norm;
  }

  const double p = cfg.p_max_watt / 2.0;
  double se = 0.0;
  for (int k = 0; k < 2; ++k) {
    double gain[2];
    for (int j = 0; j < 2; ++j) {
      C s = 0;
      for (int m = 0; m < m_ant; ++m) s += hr[k][m] * w[m][j];
      gain[j] = std::norm(s);
    }
    const double sinr = p * gain[k] / (p * gain[1 - k] + cfg.noise_watt);
    se += std::log2(1.0 + sinr);
  }
  return se;
}

}  // namespace risopt::testing_support
