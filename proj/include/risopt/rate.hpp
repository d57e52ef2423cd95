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

#include <span>
#include <stdexcept>
#include <vector>

#include "risopt/channel.hpp"

namespace risopt {

/// Raised when the regularized Gram matrix of the precoder cannot be inverted.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete RIS configuration. Index j means phase j * 2 pi / 2^bits.
struct PhaseConfig {
  std::vector<int> indices;
  int resolution_bits = 1;

  static PhaseConfig zeros(int n_elements, int resolution_bits);

  int size() const { return static_cast<int>(indices.size()); }
  int levels() const { return 1 << resolution_bits; }
  double phase(int n) const;
  /// Moves element n to the next level, wrapping to 0 after the last one.
  void advance(int n) { indices[n] = (indices[n] + 1) % levels(); }
  void validate(int n_elements) const;

  bool operator==(const PhaseConfig&) const = default;
};

struct RateBreakdown {
  Eigen::VectorXd sinr;
  double spectral_bps_hz = 0.0;
  double rate_bps = 0.0;
};

/// Ascending list {j 2 pi / 2^bits}.
std::vector<double> phase_set(int resolution_bits);

/// Diagonal of Phi = beta diag(exp(j theta)).
CVector phases_to_beamforming(const PhaseConfig& phases, double beta);
CVector continuous_beamforming(std::span<const double> theta, double beta);

/// H_ris (K x M) whose row k is h_k^T Phi G.
CMatrix effective_channel(const CMatrix& h, const CVector& phi, const CMatrix& g);

/// Regularized zero-forcing precoder W (M x K). Uses the K x K inverse when
/// K <= M and the M x M inverse otherwise.
CMatrix rzf_precoder(const CMatrix& h_ris, double kappa,
                     PrecoderNorm norm = PrecoderNorm::kColumn);

/// Same precoder through one branch regardless of K and M; exposed so the two
/// forms can be compared on one instance.
CMatrix rzf_precoder_user_side(const CMatrix& h_ris, double kappa, PrecoderNorm norm);
CMatrix rzf_precoder_antenna_side(const CMatrix& h_ris, double kappa, PrecoderNorm norm);

Eigen::VectorXd compute_sinr(const CMatrix& h_ris, const CMatrix& w,
                             const Eigen::VectorXd& power, const Eigen::VectorXd& noise);

RateBreakdown rate_from_sinr(const Eigen::VectorXd& sinr, double bandwidth_hz);

/// Sum rate for an arbitrary diagonal Phi (used for continuous phases).
RateBreakdown sum_rate(const CVector& phi, const ChannelPair& ch, const SystemConfig& cfg);

RateBreakdown sum_rate(const PhaseConfig& phases, const ChannelPair& ch, const SystemConfig& cfg);

}  // namespace risopt
