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

#include "risopt/rate.hpp"

#include <Eigen/LU>
#include <string>

namespace risopt {

PhaseConfig PhaseConfig::zeros(int n_elements, int resolution_bits) {
  return PhaseConfig{std::vector<int>(static_cast<std::size_t>(n_elements), 0), resolution_bits};
}

double PhaseConfig::phase(int n) const {
  return indices[n] * 2.0 * kPi / levels();
}

void PhaseConfig::validate(int n_elements) const {
  if (resolution_bits < 1) throw std::invalid_argument("phase config: resolution_bits must be >= 1");
  if (size() != n_elements)
    throw std::invalid_argument("phase config: expected " + std::to_string(n_elements) +
                                " elements, got " + std::to_string(size()));
  for (int j : indices)
    if (j < 0 || j >= levels())
      throw std::invalid_argument("phase config: index " + std::to_string(j) + " out of range");
}

std::vector<double> phase_set(int resolution_bits) {
  if (resolution_bits < 1) throw std::invalid_argument("phase_set: resolution_bits must be >= 1");
  const int levels = 1 << resolution_bits;
  std::vector<double> out(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) out[j] = j * 2.0 * kPi / levels;
  return out;
}

CVector phases_to_beamforming(const PhaseConfig& phases, double beta) {
  CVector phi(phases.size());
  for (int n = 0; n < phases.size(); ++n) phi[n] = std::polar(beta, phases.phase(n));
  return phi;
}

CVector continuous_beamforming(std::span<const double> theta, double beta) {
  CVector phi(static_cast<Eigen::Index>(theta.size()));
  for (std::size_t n = 0; n < theta.size(); ++n) phi[n] = std::polar(beta, theta[n]);
  return phi;
}

CMatrix effective_channel(const CMatrix& h, const CVector& phi, const CMatrix& g) {
  if (h.rows() != phi.size() || g.rows() != phi.size())
    throw std::invalid_argument("effective_channel: h, phi and g must share N rows");
  return (phi.asDiagonal() * h).transpose() * g;
}

namespace {

void normalize(CMatrix& w, PrecoderNorm norm) {
  if (norm == PrecoderNorm::kMatrix) {
    const double f = w.norm();
    if (f == 0.0) throw NumericalError("rzf: zero precoder");
    w /= f;
    return;
  }
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    const double c = w.col(k).norm();
    if (c == 0.0) throw NumericalError("rzf: zero precoder column");
    w.col(k) /= c;
  }
}

CMatrix solve_gram(const CMatrix& gram, const CMatrix& rhs) {
  Eigen::FullPivLU<CMatrix> lu(gram);
  if (!lu.isInvertible()) throw NumericalError("rzf: regularized Gram matrix is singular");
  return lu.solve(rhs);
}

}  // namespace

CMatrix rzf_precoder_user_side(const CMatrix& h_ris, double kappa, PrecoderNorm norm) {
  const Eigen::Index k = h_ris.rows();
  const CMatrix gram = h_ris * h_ris.adjoint() + kappa * CMatrix::Identity(k, k);
  // H^H (H H^H + kappa I)^-1 = ((H H^H + kappa I)^-1 H)^H since the Gram is Hermitian.
  CMatrix w = solve_gram(gram, h_ris).adjoint();
  normalize(w, norm);
  return w;
}

CMatrix rzf_precoder_antenna_side(const CMatrix& h_ris, double kappa, PrecoderNorm norm) {
  const Eigen::Index m = h_ris.cols();
  const CMatrix gram = h_ris.adjoint() * h_ris + kappa * CMatrix::Identity(m, m);
  CMatrix w = solve_gram(gram, h_ris.adjoint());
  normalize(w, norm);
  return w;
}

CMatrix rzf_precoder(const CMatrix& h_ris, double kappa, PrecoderNorm norm) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("rzf: kappa must be >= 0");
  if (h_ris.size() == 0 || h_ris.cwiseAbs().maxCoeff() == 0.0)
    throw NumericalError("rzf: effective channel is zero");
  if (h_ris.rows() <= h_ris.cols()) return rzf_precoder_user_side(h_ris, kappa, norm);
  return rzf_precoder_antenna_side(h_ris, kappa, norm);
}

Eigen::VectorXd compute_sinr(const CMatrix& h_ris, const CMatrix& w,
                             const Eigen::VectorXd& power, const Eigen::VectorXd& noise) {
  const Eigen::Index k_users = h_ris.rows();
  if (w.rows() != h_ris.cols() || w.cols() != k_users || power.size() != k_users ||
      noise.size() != k_users)
    throw std::invalid_argument("compute_sinr: shape mismatch");
  // gains(k, j) = |h_ris,k w_j|^2
  const Eigen::MatrixXd gains = (h_ris * w).cwiseAbs2();
  Eigen::VectorXd sinr(k_users);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < k_users; ++j)
      if (j != k) interference += power[j] * gains(k, j);
    sinr[k] = power[k] * gains(k, k) / (interference + noise[k]);
  }
  return sinr;
}

RateBreakdown rate_from_sinr(const Eigen::VectorXd& sinr, double bandwidth_hz) {
  RateBreakdown out;
  out.sinr = sinr;
  for (Eigen::Index k = 0; k < sinr.size(); ++k) out.spectral_bps_hz += std::log2(1.0 + sinr[k]);
  out.rate_bps = bandwidth_hz * out.spectral_bps_hz;
  return out;
}

RateBreakdown sum_rate(const CVector& phi, const ChannelPair& ch, const SystemConfig& cfg) {
  const CMatrix h_ris = effective_channel(ch.h, phi, ch.g);
  const CMatrix w = rzf_precoder(h_ris, cfg.regularization(), cfg.precoder_norm);
  const Eigen::VectorXd power = Eigen::VectorXd::Constant(cfg.n_users, cfg.p_max_watt / cfg.n_users);
  const Eigen::VectorXd noise = Eigen::VectorXd::Constant(cfg.n_users, cfg.noise_watt);
  return rate_from_sinr(compute_sinr(h_ris, w, power, noise), cfg.bandwidth_hz);
}

RateBreakdown sum_rate(const PhaseConfig& phases, const ChannelPair& ch, const SystemConfig& cfg) {
  phases.validate(cfg.n_elements);
  return sum_rate(phases_to_beamforming(phases, cfg.amplitude), ch, cfg);
}

}  // namespace risopt
