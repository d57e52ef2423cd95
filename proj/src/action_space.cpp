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

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "risopt/harness.hpp"

namespace risopt {

std::string to_string(ControlScheme scheme) {
  switch (scheme) {
    case ControlScheme::kElement: return "element";
    case ControlScheme::kColumn: return "column";
    case ControlScheme::kGroup10: return "group10";
    case ControlScheme::kProposed: return "proposed";
  }
  throw std::logic_error("unknown control scheme");
}

ControlScheme scheme_from_string(const std::string& name) {
  if (name == "element") return ControlScheme::kElement;
  if (name == "column") return ControlScheme::kColumn;
  if (name == "group10") return ControlScheme::kGroup10;
  if (name == "proposed") return ControlScheme::kProposed;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected element, column, group10 or proposed)");
}

namespace {

// Exponent e of 2^e for the power-of-two schemes.
long exponent_bits(ControlScheme scheme, int n_side, int resolution_bits) {
  const long n = static_cast<long>(n_side) * n_side;
  switch (scheme) {
    case ControlScheme::kElement: return n * resolution_bits;
    case ControlScheme::kColumn: return static_cast<long>(n_side) * resolution_bits;
    case ControlScheme::kGroup10:
      if (n % 10 != 0)
        throw std::invalid_argument("group10 needs N divisible by 10, got N = " + std::to_string(n));
      return n / 10 * resolution_bits;
    case ControlScheme::kProposed: break;
  }
  throw std::logic_error("proposed scheme has no power-of-two size");
}

void check_args(int n_side, int resolution_bits) {
  if (n_side < 1) throw std::invalid_argument("action_space_size: n_side must be >= 1");
  if (resolution_bits < 1) throw std::invalid_argument("action_space_size: resolution_bits must be >= 1");
}

}  // namespace

std::string action_space_size(ControlScheme scheme, int n_side, int resolution_bits) {
  check_args(n_side, resolution_bits);
  if (scheme == ControlScheme::kProposed) return std::to_string(n_side + 1);
  boost::multiprecision::cpp_int size = 1;
  size <<= static_cast<unsigned>(exponent_bits(scheme, n_side, resolution_bits));
  return size.str();
}

double action_space_log2(ControlScheme scheme, int n_side, int resolution_bits) {
  check_args(n_side, resolution_bits);
  if (scheme == ControlScheme::kProposed) return std::log2(static_cast<double>(n_side + 1));
  return static_cast<double>(exponent_bits(scheme, n_side, resolution_bits));
}

std::vector<double> moving_average(std::span<const double> series, int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t first = i + 1 >= static_cast<std::size_t>(window) ? i + 1 - window : 0;
    const double sum = std::accumulate(series.begin() + first, series.begin() + i + 1, 0.0);
    out[i] = sum / static_cast<double>(i + 1 - first);
  }
  return out;
}

}  // namespace risopt
