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

#include "risopt/replay.hpp"

#include <stdexcept>
#include <string>

namespace risopt {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay buffer: capacity must be >= 1");
  items_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= items_.size()) throw std::out_of_range("replay buffer: index out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<std::reference_wrapper<const Transition>> ReplayBuffer::sample(std::size_t n,
                                                                           Rng& rng) const {
  if (items_.size() < n)
    throw std::invalid_argument("replay buffer: need " + std::to_string(n) + " transitions, have " +
                                std::to_string(items_.size()));
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<std::reference_wrapper<const Transition>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(items_[pick(rng)]);
  return out;
}

}  // namespace risopt
