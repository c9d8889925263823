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

#include "inche/he_backend.hpp"

#include <string>
#include <utility>

#include "backend.hpp"
#include "inche/errors.hpp"

namespace inche::he {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kDebug:
      return "debug";
    case Scheme::kPaillier:
      return "paillier";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "debug") return Scheme::kDebug;
  if (name == "paillier") return Scheme::kPaillier;
  throw InvalidArgument("unknown backend '" + std::string(name) + "'");
}

unsigned min_modulus_bits(unsigned n_bits) {
  // M >= 2^(modulus_bits - 1) for Paillier and M = 2^modulus_bits for the
  // debug scheme; one extra bit makes the inequality strict for both.
  return n_bits + kAggregateHeadroomBits + 1;
}

SecretKey::SecretKey(std::shared_ptr<const detail::Backend> impl)
    : impl_(std::move(impl)) {}

Scheme SecretKey::scheme() const { return impl_->scheme(); }
std::uint64_t SecretKey::key_id() const { return impl_->key_id(); }
const SchemeParams& SecretKey::params() const { return impl_->params(); }
const BigInt& SecretKey::plaintext_modulus() const {
  return impl_->plaintext_modulus();
}

SecretKey keygen(const SchemeParams& params) {
  if (params.n_bits == 0 || params.n_bits > 64) {
    throw InvalidArgument("n_bits must be in [1, 64], got " +
                          std::to_string(params.n_bits));
  }
  if (params.modulus_bits < min_modulus_bits(params.n_bits)) {
    throw InvalidArgument(
        "modulus_bits=" + std::to_string(params.modulus_bits) +
        " cannot hold 2^" + std::to_string(params.n_bits) +
        "-value aggregates; need at least " +
        std::to_string(min_modulus_bits(params.n_bits)));
  }
  if (params.modulus_bits > kMaxModulusBits) {
    throw InvalidArgument("modulus_bits above " +
                          std::to_string(kMaxModulusBits));
  }
  switch (params.scheme) {
    case Scheme::kDebug:
      return SecretKey(detail::make_debug(params));
    case Scheme::kPaillier:
      if (params.modulus_bits < kMinPaillierModulusBits) {
        throw InvalidArgument("paillier needs modulus_bits >= " +
                              std::to_string(kMinPaillierModulusBits));
      }
      return SecretKey(detail::make_paillier(params));
  }
  throw InvalidArgument("unknown scheme");
}

void check_same_key(const SecretKey& key, const Ciphertext& c) {
  if (c.scheme != key.scheme()) {
    throw SchemeMismatch(std::string("ciphertext scheme '") +
                         std::string(to_string(c.scheme)) +
                         "' does not match key scheme '" +
                         std::string(to_string(key.scheme())) + "'");
  }
  if (c.key_id != key.key_id()) {
    throw SchemeMismatch("ciphertext was produced under a different key");
  }
}

namespace {

void check_pair(const SecretKey& key, const Ciphertext& a,
                const Ciphertext& b) {
  check_same_key(key, a);
  check_same_key(key, b);
}

}  // namespace

Ciphertext encrypt(const SecretKey& key, const BigInt& m) {
  if (m < 0 || m >= key.plaintext_modulus()) {
    throw OutOfDomain("plaintext outside [0, M)");
  }
  return Ciphertext{key.backend().encrypt(m), key.scheme(), key.key_id()};
}

Ciphertext encrypt(const SecretKey& key, std::uint64_t m) {
  BigInt v;
  mpz_import(v.get_mpz_t(), 1, 1, sizeof(m), 0, 0, &m);
  return encrypt(key, v);
}

BigInt decrypt(const SecretKey& key, const Ciphertext& c) {
  check_same_key(key, c);
  if (!key.backend().in_group(c.value)) {
    throw SchemeMismatch("ciphertext outside the backend's group");
  }
  return key.backend().decrypt(c.value);
}

Ciphertext he_add(const SecretKey& key, const Ciphertext& a,
                  const Ciphertext& b) {
  check_pair(key, a, b);
  Ciphertext out = a;
  key.backend().add_inplace(out.value, b.value);
  return out;
}

void he_add_inplace(const SecretKey& key, Ciphertext& acc,
                    const Ciphertext& b) {
  check_pair(key, acc, b);
  key.backend().add_inplace(acc.value, b.value);
}

Ciphertext he_scalar_mul(const SecretKey& key, const Ciphertext& a,
                         const BigInt& k) {
  check_same_key(key, a);
  if (k < 0) throw InvalidArgument("he_scalar_mul: negative scalar");
  return Ciphertext{key.backend().scalar_mul(a.value, k), a.scheme, a.key_id};
}

Ciphertext he_scalar_mul(const SecretKey& key, const Ciphertext& a,
                         std::uint64_t k) {
  BigInt v;
  mpz_import(v.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
  return he_scalar_mul(key, a, v);
}

}  // namespace inche::he
