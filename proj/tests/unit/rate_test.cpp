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

#include <gtest/gtest.h>

#include <cmath>

#include "risopt/baselines.hpp"
#include "risopt/rate.hpp"
#include "rzf_reference.hpp"

namespace risopt {
namespace {

CMatrix random_complex(Rng& rng, int rows, int cols) { return sample_nlos(rng, rows, cols); }

using testing_support::rel_diff;
using testing_support::svd_rzf;

TEST(PhaseSet, Levels) {
  const auto one = phase_set(1);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[0], 0.0);
  EXPECT_DOUBLE_EQ(one[1], kPi);
  const auto two = phase_set(2);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_DOUBLE_EQ(two[1], kPi / 2);
  EXPECT_DOUBLE_EQ(two[2], kPi);
  EXPECT_DOUBLE_EQ(two[3], 3 * kPi / 2);
  EXPECT_EQ(phase_set(3).size(), 8u);
  EXPECT_THROW(phase_set(0), std::invalid_argument);
}

TEST(PhaseConfig, AdvanceWrapsAndValidates) {
  PhaseConfig p = PhaseConfig::zeros(3, 2);
  p.indices[1] = 3;
  p.advance(1);
  p.advance(0);
  EXPECT_EQ(p.indices, (std::vector<int>{1, 0, 0}));
  EXPECT_THROW(p.validate(4), std::invalid_argument);
  p.indices[2] = 4;
  EXPECT_THROW(p.validate(3), std::invalid_argument);
}

TEST(Beamforming, ModulusAndMapping) {
  PhaseConfig p{{0, 2, 1, 3}, 2};
  const CVector phi = phases_to_beamforming(p, 1.0);
  EXPECT_LT(std::abs(phi[0] - Complex(1, 0)), 1e-15);
  EXPECT_LT(std::abs(phi[1] - Complex(-1, 0)), 1e-15);
  EXPECT_LT(std::abs(phi[2] - Complex(0, 1)), 1e-15);
  const CVector scaled = phases_to_beamforming(p, 0.8);
  EXPECT_LT(std::abs(scaled[0] - Complex(0.8, 0)), 1e-15);
  for (Eigen::Index n = 0; n < 4; ++n) EXPECT_NEAR(std::abs(scaled[n]), 0.8, 1e-15);
}

TEST(EffectiveChannel, ScalarPassthrough) {
  CMatrix h(1, 1), g(1, 2);
  h << 1.0;
  g << 1.0, 1.0;
  CVector phi(1);
  phi << 1.0;
  const CMatrix out = effective_channel(h, phi, g);
  EXPECT_EQ(out.rows(), 1);
  EXPECT_EQ(out(0, 0), Complex(1, 0));
  EXPECT_EQ(out(0, 1), Complex(1, 0));
}

TEST(EffectiveChannel, IdentityPhiIsHTransposeG) {
  Rng rng = make_rng(1, 0);
  const CMatrix h = random_complex(rng, 6, 2), g = random_complex(rng, 6, 3);
  EXPECT_LT(rel_diff(effective_channel(h, CVector::Ones(6), g), h.transpose() * g), 1e-15);
}

TEST(EffectiveChannel, MatchesTripleLoop) {
  Rng rng = make_rng(2, 0);
  const CMatrix h = random_complex(rng, 4, 2), g = random_complex(rng, 4, 4);
  const CVector phi = random_complex(rng, 4, 1);
  const CMatrix out = effective_channel(h, phi, g);
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < 4; ++m) {
      Complex acc = 0;
      for (int n = 0; n < 4; ++n) acc += h(n, k) * phi[n] * g(n, m);
      EXPECT_LT(std::abs(out(k, m) - acc), 1e-12 * std::abs(acc));
    }
  EXPECT_THROW(effective_channel(h, CVector::Ones(3), g), std::invalid_argument);
}

TEST(Rzf, SingleUserSingleAntennaIsPhaseConjugate) {
  CMatrix h(1, 1);
  h << Complex(0.3, -0.4);
  for (double kappa : {0.0, 1e-3, 5.0}) {
    const CMatrix w = rzf_precoder(h, kappa);
    EXPECT_LT(std::abs(w(0, 0) - std::conj(h(0, 0)) / std::abs(h(0, 0))), 1e-15);
  }
}

TEST(Rzf, ZeroForcingLimit) {
  Rng rng = make_rng(3, 0);
  const CMatrix h = random_complex(rng, 2, 4);
  const CMatrix hw = h * rzf_precoder(h, 1e-12);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      if (j != k) EXPECT_LE(std::abs(hw(k, j)) / std::abs(hw(k, k)), 1e-6);
}

TEST(Rzf, BranchesAgreeWithSvdReference) {
  Rng rng = make_rng(4, 0);
  for (auto [k, m] : {std::pair{3, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
    const CMatrix h = random_complex(rng, k, m);
    const double kappa = 0.37;
    const CMatrix ref = svd_rzf(h, kappa);
    const CMatrix user = rzf_precoder_user_side(h, kappa, PrecoderNorm::kColumn);
    const CMatrix ant = rzf_precoder_antenna_side(h, kappa, PrecoderNorm::kColumn);
    EXPECT_LE(rel_diff(user, ref), 1e-10);
    EXPECT_LE(rel_diff(ant, ref), 1e-10);
    EXPECT_LE(rel_diff(rzf_precoder(h, kappa), ref), 1e-10);
  }
}

TEST(Rzf, NormalizationModes) {
  Rng rng = make_rng(5, 0);
  const CMatrix h = random_complex(rng, 2, 4);
  const CMatrix col = rzf_precoder(h, 0.1, PrecoderNorm::kColumn);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(col.col(k).norm(), 1.0, 1e-14);
  EXPECT_NEAR(rzf_precoder(h, 0.1, PrecoderNorm::kMatrix).norm(), 1.0, 1e-14);
}

TEST(Rzf, SingularGramRaisesNumericalError) {
  CMatrix h(2, 2);
  h << 1.0, 2.0, 2.0, 4.0;  // rank one
  EXPECT_THROW(rzf_precoder(h, 0.0), NumericalError);
  EXPECT_THROW(rzf_precoder(CMatrix::Zero(2, 2), 1.0), NumericalError);
  EXPECT_THROW(rzf_precoder(h, -1.0), std::invalid_argument);
}

TEST(Sinr, SingleUserHasNoInterference) {
  CMatrix h(1, 2), w(2, 1);
  h << Complex(1, 1), Complex(0.5, 0);
  w << Complex(0.6, 0), Complex(0, 0.8);
  const Eigen::VectorXd s = compute_sinr(h, w, Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Constant(1, 0.1));
  EXPECT_NEAR(s[0], 2.0 * std::norm(Complex(1, 1) * 0.6 + Complex(0.5, 0) * Complex(0, 0.8)) / 0.1, 1e-12);
}

TEST(Sinr, OrthogonalUsers) {
  CMatrix h = CMatrix::Identity(2, 2), w = CMatrix::Identity(2, 2);
  Eigen::VectorXd p(2), n(2);
  p << 1.0, 3.0;
  n << 0.5, 0.25;
  const Eigen::VectorXd s = compute_sinr(h, w, p, n);
  EXPECT_DOUBLE_EQ(s[0], 2.0);
  EXPECT_DOUBLE_EQ(s[1], 12.0);
}

TEST(Sinr, HandBuiltTwoUserInstance) {
  CMatrix h(2, 2), w(2, 2);
  h << Complex(1.0, 0.5), Complex(-0.2, 0.1), Complex(0.3, 0.0), Complex(0.9, -0.4);
  w << Complex(0.8, 0.1), Complex(0.1, 0.2), Complex(-0.2, 0.0), Complex(0.7, 0.3);
  const double p1 = 0.4, p2 = 0.6, s2 = 0.05;
  auto dot = [&](int k, int j) { return h(k, 0) * w(0, j) + h(k, 1) * w(1, j); };
  const double ref0 = p1 * std::norm(dot(0, 0)) / (p2 * std::norm(dot(0, 1)) + s2);
  const double ref1 = p2 * std::norm(dot(1, 1)) / (p1 * std::norm(dot(1, 0)) + s2);
  Eigen::VectorXd p(2);
  p << p1, p2;
  const Eigen::VectorXd s = compute_sinr(h, w, p, Eigen::VectorXd::Constant(2, s2));
  EXPECT_NEAR(s[0], ref0, 1e-12 * ref0);
  EXPECT_NEAR(s[1], ref1, 1e-12 * ref1);
}

TEST(SumRate, RateIsBandwidthTimesSpectralEfficiency) {
  Eigen::VectorXd sinr(2);
  sinr << 1.0, 1.0;
  const RateBreakdown r = rate_from_sinr(sinr, 10e6);
  EXPECT_EQ(r.rate_bps, 2e7);
  EXPECT_EQ(r.spectral_bps_hz, 2.0);
  sinr << 3.7, 0.2;
  const RateBreakdown q = rate_from_sinr(sinr, 10e6);
  EXPECT_EQ(q.rate_bps, 10e6 * (std::log2(4.7) + std::log2(1.2)));
}

TEST(SumRate, SingleUserMonotoneInPower) {
  SystemConfig cfg;
  cfg.n_elements = 9;
  cfg.n_users = 1;
  const ChannelPair ch = realize_channels(cfg, 3);
  const PhaseConfig p{{0, 1, 0, 1, 1, 0, 0, 0, 1}, 1};
  double prev = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double r = sum_rate(p, ch, cfg).rate_bps;
    EXPECT_GE(r, prev);
    EXPECT_GE(r, 0.0);
    prev = r;
    cfg.p_max_watt *= 2.0;
  }
}

TEST(SumRate, UserRelabelingInvariance) {
  SystemConfig cfg;
  cfg.n_elements = 16;
  cfg.n_users = 3;
  ChannelPair ch = realize_channels(cfg, 4);
  const PhaseConfig p{{0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1}, 1};
  const double base = sum_rate(p, ch, cfg).rate_bps;
  ChannelPair swapped = ch;
  swapped.h.col(0) = ch.h.col(2);
  swapped.h.col(2) = ch.h.col(0);
  EXPECT_NEAR(sum_rate(p, swapped, cfg).rate_bps, base, 1e-12 * base);
}

TEST(SumRate, ExhaustiveMaxEqualsOracle) {
  SystemConfig cfg;
  cfg.n_elements = 4;
  cfg.n_antennas = 2;
  const ChannelPair ch = realize_channels(cfg, 5);
  double best = -1.0;
  for (int code = 0; code < 16; ++code) {
    PhaseConfig p{{code >> 3 & 1, code >> 2 & 1, code >> 1 & 1, code & 1}, 1};
    best = std::max(best, sum_rate(p, ch, cfg).rate_bps);
  }
  EXPECT_EQ(exhaustive_oracle(ch, cfg).best_rate_bps, best);
}

TEST(SumRate, ContinuousMatchesDiscreteOnGrid) {
  SystemConfig cfg;
  cfg.n_elements = 4;
  const ChannelPair ch = realize_channels(cfg, 6);
  const PhaseConfig p{{1, 0, 0, 1}, 1};
  const std::vector<double> theta = {kPi, 0.0, 0.0, kPi};
  EXPECT_NEAR(sum_rate(continuous_beamforming(theta, 1.0), ch, cfg).rate_bps, sum_rate(p, ch, cfg).rate_bps,
              1e-6);
  EXPECT_THROW(sum_rate(PhaseConfig::zeros(3, 1), ch, cfg), std::invalid_argument);
}

}  // namespace
}  // namespace risopt
