// Copyright 2026 The wwkde Authors
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

#include <array>
#include <cstdint>
#include <limits>

namespace wwkde {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// State is a 64-bit key plus a 128-bit counter. The upper 64 counter bits
/// select a stream and the lower 64 count blocks within it, so stream
/// `(seed, s)` is independent of how many other streams are drawn or in
/// which order. Satisfies UniformRandomBitGenerator.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  /// One Philox4x32-10 block; exposed for known-answer tests.
  static Block bijection(Block counter, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform double in (0, 1), safe for logarithms.
  double uniform_open();

 private:
  void refill();

  Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int used_ = 4;
};

}  // namespace wwkde
