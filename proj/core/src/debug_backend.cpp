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

// Plaintext-carrying identity scheme over Z / 2^modulus_bits. Insecure.

#include <utility>

#include "backend.hpp"

namespace inche::he::detail {
namespace {

class DebugBackend final : public Backend {
 public:
  DebugBackend(const SchemeParams& params, std::uint64_t key_id)
      : Backend(params) {
    key_id_ = key_id;
    mpz_ui_pow_ui(modulus_.get_mpz_t(), 2, params.modulus_bits);
  }

  const BigInt& plaintext_modulus() const override { return modulus_; }

  bool in_group(const BigInt& c) const override {
    return c >= 0 && c < modulus_;
  }

  BigInt encrypt(const BigInt& m) const override { return m; }
  BigInt decrypt(const BigInt& c) const override { return c; }

  void add_inplace(BigInt& acc, const BigInt& b) const override {
    acc += b;
    reduce(acc);
  }

  BigInt scalar_mul(const BigInt& c, const BigInt& k) const override {
    BigInt out = c * k;
    reduce(out);
    return out;
  }

  std::vector<BigInt> secret_fields() const override { return {}; }

 private:
  void reduce(BigInt& v) const {
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), params_.modulus_bits);
  }

  BigInt modulus_;
};

}  // namespace

std::shared_ptr<const Backend> make_debug(const SchemeParams& params) {
  inche::detail::Csprng rng(params.seed, "inche/debug/keygen");
  return std::make_shared<DebugBackend>(params, rng.next_u64());
}

std::shared_ptr<const Backend> restore_debug(const SchemeParams& params,
                                             std::uint64_t key_id) {
  return std::make_shared<DebugBackend>(params, key_id);
}

}  // namespace inche::he::detail
