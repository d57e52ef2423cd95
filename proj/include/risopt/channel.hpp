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

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "risopt/config.hpp"

namespace risopt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Point = Eigen::Vector3d;

/// RIS element n sits in column n / side and row n % side, so a column is a
/// contiguous index block.
struct NodePositions {
  std::vector<Point> ris_cells;
  std::vector<Point> fbs_antennas;
  std::vector<Point> users;
};

/// One channel realization. `g` is FBS->RIS (N x M), `h` is RIS->users (N x K).
/// The NLoS parts are stored already scaled by the per-entry path loss.
struct ChannelPair {
  CMatrix g;
  CMatrix h;
  CMatrix g_los;
  CMatrix h_los;
  CMatrix g_nlos;
  CMatrix h_nlos;
};

/// Ceiling-centred RIS grid; FBS (uniform linear array along y) in the x < L/2
/// half of the room and users in the x > L/2 half, heights in [0, max_height].
NodePositions sample_positions(const SystemConfig& cfg, Rng& rng);

/// Near-field LoS matrix between two point sets: entry (n, m) is
/// a(d) exp(-j 2 pi d / lambda) with per-pair Euclidean distance d.
CMatrix los_matrix(const std::vector<Point>& rows, const std::vector<Point>& cols,
                   const SystemConfig& cfg);

struct LosPair {
  CMatrix g_los;
  CMatrix h_los;
};

LosPair build_los(const NodePositions& positions, const SystemConfig& cfg);

/// i.i.d. CN(0, 1) entries.
CMatrix sample_nlos(Rng& rng, int rows, int cols);

/// sqrt(eps/(eps+1)) los + sqrt(1/(eps+1)) nlos.
CMatrix assemble_rician(const CMatrix& los, const CMatrix& nlos, double factor);

ChannelPair realize_channels(const SystemConfig& cfg, Rng& rng);

/// Convenience wrapper drawing from the channel stream of `seed`.
ChannelPair realize_channels(const SystemConfig& cfg, std::uint64_t seed);

}  // namespace risopt
