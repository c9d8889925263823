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

#include "csprng.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>
#include <vector>

namespace inche::detail {
namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}

mpz_class from_bytes(std::span<const std::uint8_t> bytes) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return out;
}

}  // namespace

Csprng::Csprng(std::optional<std::uint64_t> seed, std::string_view domain)
    : seeded_(seed.has_value()) {
  ensure_sodium();
  if (!seeded_) return;
  std::array<std::uint8_t, 8> seed_bytes{};
  for (int i = 0; i < 8; ++i) {
    seed_bytes[i] = static_cast<std::uint8_t>(*seed >> (56 - 8 * i));
  }
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, stream_key_.size());
  crypto_generichash_update(&st, seed_bytes.data(), seed_bytes.size());
  crypto_generichash_update(
      &st, reinterpret_cast<const unsigned char*>(domain.data()), domain.size());
  crypto_generichash_final(&st, stream_key_.data(), stream_key_.size());
}

void Csprng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (!seeded_) {
    randombytes_buf(out.data(), out.size());
    return;
  }
  std::uint64_t nonce_value;
  {
    std::lock_guard<std::mutex> lock(mu_);
    nonce_value = block_counter_++;
  }
  std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  static_assert(crypto_stream_chacha20_NONCEBYTES == 8);
  std::memcpy(nonce.data(), &nonce_value, sizeof(nonce_value));
  crypto_stream_chacha20(out.data(), out.size(), nonce.data(),
                         stream_key_.data());
}

std::uint64_t Csprng::next_u64() {
  std::array<std::uint8_t, 8> buf{};
  fill(buf);
  std::uint64_t v = 0;
  for (auto b : buf) v = (v << 8) | b;
  return v;
}

mpz_class Csprng::below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Csprng::below: bound <= 0");
  // 64 extra bits keep the modular bias below 2^-64.
  const std::size_t nbytes = (mpz_sizeinbase(bound.get_mpz_t(), 2) + 64 + 7) / 8;
  std::vector<std::uint8_t> buf(nbytes);
  fill(buf);
  mpz_class v = from_bytes(buf);
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), bound.get_mpz_t());
  return v;
}

mpz_class Csprng::top_heavy_bits(unsigned bits) {
  if (bits < 2) throw std::invalid_argument("Csprng::top_heavy_bits: bits < 2");
  std::vector<std::uint8_t> buf((bits + 7) / 8);
  fill(buf);
  mpz_class v = from_bytes(buf);
  mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  mpz_setbit(v.get_mpz_t(), bits - 1);
  mpz_setbit(v.get_mpz_t(), bits - 2);
  return v;
}

}  // namespace inche::detail
