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

#ifndef INCHE_SRC_BACKEND_HPP_
#define INCHE_SRC_BACKEND_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "csprng.hpp"
#include "inche/he_backend.hpp"

namespace inche::he::detail {

// Raw big-integer operations of one key. Range and tag checks happen in the
// public free functions; implementations may assume valid inputs.
class Backend {
 public:
  explicit Backend(SchemeParams params) : params_(std::move(params)) {}
  virtual ~Backend() = default;

  Backend(const Backend&) = delete;
  Backend& operator=(const Backend&) = delete;

  const SchemeParams& params() const { return params_; }
  Scheme scheme() const { return params_.scheme; }
  std::uint64_t key_id() const { return key_id_; }

  virtual const BigInt& plaintext_modulus() const = 0;
  virtual bool in_group(const BigInt& c) const = 0;
  virtual BigInt encrypt(const BigInt& m) const = 0;
  virtual BigInt decrypt(const BigInt& c) const = 0;
  virtual void add_inplace(BigInt& acc, const BigInt& b) const = 0;
  virtual BigInt scalar_mul(const BigInt& c, const BigInt& k) const = 0;
  // Secret integers written after the common header, in order.
  virtual std::vector<BigInt> secret_fields() const = 0;

 protected:
  std::uint64_t key_id_ = 0;
  SchemeParams params_;
};

std::shared_ptr<const Backend> make_paillier(const SchemeParams& params);
std::shared_ptr<const Backend> restore_paillier(const SchemeParams& params,
                                                const BigInt& p,
                                                const BigInt& q);

std::shared_ptr<const Backend> make_debug(const SchemeParams& params);
std::shared_ptr<const Backend> restore_debug(const SchemeParams& params,
                                             std::uint64_t key_id);

}  // namespace inche::he::detail

#endif  // INCHE_SRC_BACKEND_HPP_
