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

// Symmetric additively homomorphic encryption.
//
// A backend provides keyed encryption e_K, decryption d_K, a homomorphic
// addition he_add with dec(he_add(a, b)) = dec(a) + dec(b) mod M, and a
// ciphertext-by-plaintext scalar multiplication he_scalar_mul with
// dec(he_scalar_mul(a, k)) = k * dec(a) mod M, where M is the backend's
// plaintext modulus.
//
// Two backends ship with the library:
//
//   * kPaillier: Paillier's cryptosystem operated in secret-key mode. The key
//     owner knows the factorization of N, so both encryption and decryption
//     run over the CRT halves mod p^2 and q^2. M = N.
//   * kDebug: an insecure identity scheme whose "ciphertexts" carry the
//     plaintext. M = 2^modulus_bits. It exists so that higher layers can be
//     tested against exact arithmetic.
//
// Every ciphertext is tagged with the scheme and a fingerprint of the key that
// produced it; combining ciphertexts with different tags throws
// SchemeMismatch.

#ifndef INCHE_HE_BACKEND_HPP_
#define INCHE_HE_BACKEND_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace inche::he {

using BigInt = mpz_class;

enum class Scheme : std::uint8_t {
  kDebug = 1,
  kPaillier = 2,
};

std::string_view to_string(Scheme scheme);
// Accepts "debug" and "paillier". Throws InvalidArgument otherwise.
Scheme scheme_from_string(std::string_view name);

// Aggregates of up to 2^kAggregateHeadroomBits rows of n_bits-bit values must
// not wrap modulo M.
inline constexpr unsigned kAggregateHeadroomBits = 24;
inline constexpr unsigned kDefaultModulusBits = 2048;
inline constexpr unsigned kMinPaillierModulusBits = 32;
inline constexpr unsigned kMaxModulusBits = 16384;

struct SchemeParams {
  Scheme scheme = Scheme::kPaillier;
  // Plaintext bit length n; the field domain is [0, 2^n_bits).
  unsigned n_bits = 32;
  // Bit length of N (Paillier) or of M (debug).
  unsigned modulus_bits = kDefaultModulusBits;
  // Seeds key generation and encryption randomness. Unset draws from the OS.
  std::optional<std::uint64_t> seed;
};

// Smallest modulus_bits that keeps M > 2^(n_bits + kAggregateHeadroomBits).
unsigned min_modulus_bits(unsigned n_bits);

struct Ciphertext {
  BigInt value;
  Scheme scheme = Scheme::kDebug;
  std::uint64_t key_id = 0;

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.scheme == b.scheme && a.key_id == b.key_id && a.value == b.value;
  }
};

namespace detail {
class Backend;
}  // namespace detail

// Handle to immutable key material. Copies share the same material and the
// same (internally synchronized) randomness source, so a SecretKey may be used
// from several threads at once.
class SecretKey {
 public:
  Scheme scheme() const;
  std::uint64_t key_id() const;
  const SchemeParams& params() const;
  // M. Decryption returns residues in [0, M).
  const BigInt& plaintext_modulus() const;

  // Versioned binary blob for benchmark reuse. The blob holds the secret
  // factorization in the clear; it is not meant for storage at rest.
  std::vector<std::uint8_t> serialize() const;
  static SecretKey deserialize(std::span<const std::uint8_t> blob);

  const detail::Backend& backend() const { return *impl_; }

 private:
  friend SecretKey keygen(const SchemeParams& params);
  explicit SecretKey(std::shared_ptr<const detail::Backend> impl);

  std::shared_ptr<const detail::Backend> impl_;
};

// Throws InvalidArgument when n_bits is 0 or above 64, or when modulus_bits is
// below min_modulus_bits(n_bits).
SecretKey keygen(const SchemeParams& params);

// Throws OutOfDomain unless 0 <= m < M.
Ciphertext encrypt(const SecretKey& key, const BigInt& m);
Ciphertext encrypt(const SecretKey& key, std::uint64_t m);

// Throws SchemeMismatch if c was not produced under key or is outside the
// ciphertext group.
BigInt decrypt(const SecretKey& key, const Ciphertext& c);

Ciphertext he_add(const SecretKey& key, const Ciphertext& a,
                  const Ciphertext& b);
// acc <- acc (+) b without allocating a fresh result.
void he_add_inplace(const SecretKey& key, Ciphertext& acc,
                    const Ciphertext& b);

// k = 0 yields an encryption of zero.
Ciphertext he_scalar_mul(const SecretKey& key, const Ciphertext& a,
                         const BigInt& k);
Ciphertext he_scalar_mul(const SecretKey& key, const Ciphertext& a,
                         std::uint64_t k);

// Throws SchemeMismatch unless c carries key's scheme and fingerprint.
void check_same_key(const SecretKey& key, const Ciphertext& c);

}  // namespace inche::he

#endif  // INCHE_HE_BACKEND_HPP_
