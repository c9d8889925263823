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

// Key blob layout, all integers big-endian:
//
//   magic        8 bytes  "INCHEKEY"
//   version      u8       kKeyBlobVersion
//   scheme       u8
//   n_bits       u16
//   modulus_bits u16
//   key_id       u64
//   has_seed     u8
//   seed         u64      (0 when has_seed == 0)
//   field_count  u8
//   fields       field_count x { u32 length, length bytes magnitude }

#include <algorithm>
#include <array>
#include <cstring>
#include <string>

#include "backend.hpp"
#include "inche/errors.hpp"
#include "inche/he_backend.hpp"

namespace inche::he {
namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'I', 'N', 'C', 'H',
                                                'E', 'K', 'E', 'Y'};
constexpr std::uint8_t kKeyBlobVersion = 1;

class Writer {
 public:
  void bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void uint(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  void big(const BigInt& v) {
    std::vector<std::uint8_t> mag((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    std::size_t written = 0;
    mpz_export(mag.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
    mag.resize(written);
    uint(mag.size(), 4);
    bytes(mag);
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw DataError("key blob truncated");
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint64_t uint(int width) {
    std::uint64_t v = 0;
    for (auto b : bytes(static_cast<std::size_t>(width))) v = (v << 8) | b;
    return v;
  }
  BigInt big() {
    const auto len = static_cast<std::size_t>(uint(4));
    auto mag = bytes(len);
    BigInt v;
    mpz_import(v.get_mpz_t(), mag.size(), 1, 1, 1, 0, mag.data());
    return v;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> SecretKey::serialize() const {
  Writer w;
  w.bytes(kMagic);
  w.uint(kKeyBlobVersion, 1);
  w.uint(static_cast<std::uint8_t>(scheme()), 1);
  w.uint(params().n_bits, 2);
  w.uint(params().modulus_bits, 2);
  w.uint(key_id(), 8);
  w.uint(params().seed.has_value() ? 1 : 0, 1);
  w.uint(params().seed.value_or(0), 8);
  const auto fields = impl_->secret_fields();
  w.uint(fields.size(), 1);
  for (const auto& f : fields) w.big(f);
  return w.take();
}

SecretKey SecretKey::deserialize(std::span<const std::uint8_t> blob) {
  Reader r(blob);
  auto magic = r.bytes(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw DataError("key blob: bad magic");
  }
  const auto version = r.uint(1);
  if (version != kKeyBlobVersion) {
    throw DataError("key blob: unsupported version " + std::to_string(version));
  }
  SchemeParams params;
  const auto scheme_byte = r.uint(1);
  if (scheme_byte != static_cast<std::uint8_t>(Scheme::kDebug) &&
      scheme_byte != static_cast<std::uint8_t>(Scheme::kPaillier)) {
    throw DataError("key blob: unknown scheme id " +
                    std::to_string(scheme_byte));
  }
  params.scheme = static_cast<Scheme>(scheme_byte);
  params.n_bits = static_cast<unsigned>(r.uint(2));
  params.modulus_bits = static_cast<unsigned>(r.uint(2));
  const std::uint64_t key_id = r.uint(8);
  const bool has_seed = r.uint(1) != 0;
  const std::uint64_t seed = r.uint(8);
  if (has_seed) params.seed = seed;
  const auto field_count = r.uint(1);
  std::vector<BigInt> fields;
  for (std::uint64_t i = 0; i < field_count; ++i) fields.push_back(r.big());
  if (!r.done()) throw DataError("key blob: trailing bytes");
  if (params.n_bits == 0 || params.n_bits > 64 ||
      params.modulus_bits < min_modulus_bits(params.n_bits)) {
    throw DataError("key blob: invalid parameters");
  }

  std::shared_ptr<const detail::Backend> impl;
  if (params.scheme == Scheme::kPaillier) {
    if (fields.size() != 2) throw DataError("key blob: expected p and q");
    impl = detail::restore_paillier(params, fields[0], fields[1]);
    if (impl->key_id() != key_id) {
      throw DataError("key blob: fingerprint mismatch");
    }
  } else {
    if (!fields.empty()) throw DataError("key blob: unexpected fields");
    impl = detail::restore_debug(params, key_id);
  }
  return SecretKey(std::move(impl));
}

}  // namespace inche::he
