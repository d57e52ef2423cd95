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

#include "risopt/channel.hpp"

#include <stdexcept>

namespace risopt {

namespace {

CMatrix amplitude_matrix(const std::vector<Point>& rows, const std::vector<Point>& cols,
                         const SystemConfig& cfg) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (Eigen::Index c = 0; c < out.cols(); ++c)
      out(r, c) = path_loss_amplitude((rows[r] - cols[c]).norm(), cfg.freq_hz, cfg.path_loss);
  return out;
}

}  // namespace

NodePositions sample_positions(const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  const int side = cfg.side();
  const double spacing = cfg.ris_spacing();
  const double cx = cfg.room.length / 2.0;
  const double cy = cfg.room.width / 2.0;
  const double half = (side - 1) / 2.0;

  NodePositions pos;
  pos.ris_cells.reserve(cfg.n_elements);
  for (int n = 0; n < cfg.n_elements; ++n) {
    const int col = n / side;
    const int row = n % side;
    pos.ris_cells.emplace_back(cx + (col - half) * spacing, cy + (row - half) * spacing,
                               cfg.room.height);
  }

  const double fbs_extent = (cfg.n_antennas - 1) * cfg.fbs_spacing() / 2.0;
  std::uniform_real_distribution<double> half_x(0.0, cfg.room.length / 2.0);
  std::uniform_real_distribution<double> fbs_y(fbs_extent, cfg.room.width - fbs_extent);
  std::uniform_real_distribution<double> any_y(0.0, cfg.room.width);
  std::uniform_real_distribution<double> height(0.0, cfg.max_node_height);

  const Point fbs_centre(half_x(rng), fbs_y(rng), height(rng));
  const double m_half = (cfg.n_antennas - 1) / 2.0;
  for (int m = 0; m < cfg.n_antennas; ++m)
    pos.fbs_antennas.push_back(fbs_centre + Point(0.0, (m - m_half) * cfg.fbs_spacing(), 0.0));

  for (int k = 0; k < cfg.n_users; ++k) {
    // length - [0, L/2) lands in (L/2, L].
    const double x = cfg.room.length - half_x(rng);
    const double y = any_y(rng);
    const double z = height(rng);
    pos.users.emplace_back(x, y, z);
  }
  return pos;
}

CMatrix los_matrix(const std::vector<Point>& rows, const std::vector<Point>& cols,
                   const SystemConfig& cfg) {
  const double wavenumber = 2.0 * kPi / cfg.wavelength();
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      const double d = (rows[r] - cols[c]).norm();
      out(r, c) = path_loss_amplitude(d, cfg.freq_hz, cfg.path_loss) *
                  std::polar(1.0, -wavenumber * d);
    }
  }
  return out;
}

LosPair build_los(const NodePositions& positions, const SystemConfig& cfg) {
  if (static_cast<int>(positions.ris_cells.size()) != cfg.n_elements ||
      static_cast<int>(positions.fbs_antennas.size()) != cfg.n_antennas ||
      static_cast<int>(positions.users.size()) != cfg.n_users)
    throw std::invalid_argument("build_los: positions do not match config dimensions");
  return {los_matrix(positions.ris_cells, positions.fbs_antennas, cfg),
          los_matrix(positions.ris_cells, positions.users, cfg)};
}

CMatrix sample_nlos(Rng& rng, int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("sample_nlos: empty shape");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = Complex(re, im);
    }
  return out;
}

CMatrix assemble_rician(const CMatrix& los, const CMatrix& nlos, double factor) {
  if (!(factor >= 0.0)) throw std::invalid_argument("assemble_rician: Rician factor must be >= 0");
  if (los.rows() != nlos.rows() || los.cols() != nlos.cols())
    throw std::invalid_argument("assemble_rician: shape mismatch");
  if (factor == 0.0) return nlos;
  return std::sqrt(factor / (factor + 1.0)) * los + std::sqrt(1.0 / (factor + 1.0)) * nlos;
}

ChannelPair realize_channels(const SystemConfig& cfg, Rng& rng) {
  const NodePositions pos = sample_positions(cfg, rng);
  LosPair los = build_los(pos, cfg);

  // NLoS shares the LoS path loss so that the Rician factor stays a power ratio.
  CMatrix g_nlos = sample_nlos(rng, cfg.n_elements, cfg.n_antennas)
                       .cwiseProduct(amplitude_matrix(pos.ris_cells, pos.fbs_antennas, cfg));
  CMatrix h_nlos = sample_nlos(rng, cfg.n_elements, cfg.n_users)
                       .cwiseProduct(amplitude_matrix(pos.ris_cells, pos.users, cfg));

  ChannelPair ch;
  ch.g = assemble_rician(los.g_los, g_nlos, cfg.rician_g);
  ch.h = assemble_rician(los.h_los, h_nlos, cfg.rician_h);
  ch.g_los = std::move(los.g_los);
  ch.h_los = std::move(los.h_los);
  ch.g_nlos = std::move(g_nlos);
  ch.h_nlos = std::move(h_nlos);
  return ch;
}

ChannelPair realize_channels(const SystemConfig& cfg, std::uint64_t seed) {
  Rng rng = make_rng(seed, stream::kChannel);
  return realize_channels(cfg, rng);
}

}  // namespace risopt
