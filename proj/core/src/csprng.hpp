/*
 * Copyright 2026 The INCHE Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef INCHE_SRC_CSPRNG_HPP_
#define INCHE_SRC_CSPRNG_HPP_

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>

namespace inche::detail {

// ChaCha20 keystream generator. Seeded instances derive their stream key from
// (seed, domain) so that independent purposes (key generation, encryption
// noise) never share bytes. Unseeded instances read the OS generator.
// Thread-safe.
class Csprng {
 public:
  Csprng(std::optional<std::uint64_t> seed, std::string_view domain);

  Csprng(const Csprng&) = delete;
  Csprng& operator=(const Csprng&) = delete;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();

  // Uniform in [0, bound). bound must be positive.
  mpz_class below(const mpz_class& bound);
  // Exactly `bits` bits long with the two top bits set.
  mpz_class top_heavy_bits(unsigned bits);

 private:
  bool seeded_;
  std::array<std::uint8_t, 32> stream_key_{};
  std::uint64_t block_counter_ = 0;
  std::mutex mu_;
};

}  // namespace inche::detail

#endif  // INCHE_SRC_CSPRNG_HPP_
