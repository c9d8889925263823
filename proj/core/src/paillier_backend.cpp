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

// Paillier in secret-key mode with g = N + 1.
//
//   enc(m) = (1 + m N) * r^N              mod N^2
//   dec(c) = L(c^lambda mod N^2) * mu     mod N,   L(x) = (x - 1) / N
//
// Both directions are evaluated over the CRT halves mod p^2 and q^2, which the
// key owner can do because it knows the factorization.

#include <sodium.h>

#include <utility>

#include "backend.hpp"
#include "inche/errors.hpp"

namespace inche::he::detail {
namespace {

std::uint64_t fingerprint(const BigInt& n) {
  std::vector<std::uint8_t> bytes((mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8);
  std::size_t written = 0;
  mpz_export(bytes.data(), &written, 1, 1, 1, 0, n.get_mpz_t());
  std::array<std::uint8_t, 8> digest{};
  crypto_generichash(digest.data(), digest.size(), bytes.data(), written,
                     nullptr, 0);
  std::uint64_t id = 0;
  for (auto b : digest) id = (id << 8) | b;
  return id;
}

BigInt invert(const BigInt& a, const BigInt& mod) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw InvalidArgument("paillier: value not invertible");
  }
  return out;
}

class PaillierBackend final : public Backend {
 public:
  PaillierBackend(const SchemeParams& params, BigInt p, BigInt q)
      : Backend(params),
        p_(std::move(p)),
        q_(std::move(q)),
        noise_(params.seed, "inche/paillier/encrypt") {
    if (p_ == q_) throw InvalidArgument("paillier: p == q");
    if (p_ < q_) std::swap(p_, q_);
    n_ = p_ * q_;
    n2_ = n_ * n_;
    p2_ = p_ * p_;
    q2_ = q_ * q_;
    BigInt gcd_check;
    BigInt phi = (p_ - 1) * (q_ - 1);
    mpz_gcd(gcd_check.get_mpz_t(), n_.get_mpz_t(), phi.get_mpz_t());
    if (gcd_check != 1) throw InvalidArgument("paillier: gcd(N, phi) != 1");

    // r^N mod p^2 only depends on N mod |Z*_{p^2}| = p (p - 1).
    enc_exp_p_ = n_ % (p_ * (p_ - 1));
    enc_exp_q_ = n_ % (q_ * (q_ - 1));
    q2_inv_p2_ = invert(q2_, p2_);

    hp_ = invert(l_func(pow(n_ + 1, p_ - 1, p2_), p_) % p_, p_);
    hq_ = invert(l_func(pow(n_ + 1, q_ - 1, q2_), q_) % q_, q_);
    q_inv_p_ = invert(q_, p_);
    key_id_ = fingerprint(n_);
  }

  const BigInt& plaintext_modulus() const override { return n_; }

  bool in_group(const BigInt& c) const override {
    if (c <= 0 || c >= n2_) return false;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), n_.get_mpz_t());
    return g == 1;
  }

  BigInt encrypt(const BigInt& m) const override {
    BigInt r;
    do {
      r = noise_.below(n_);
    } while (r == 0 || !coprime_with_n(r));
    const BigInt rp = r % p2_;
    const BigInt rq = r % q2_;
    const BigInt hp = pow(rp, enc_exp_p_, p2_);
    const BigInt hq = pow(rq, enc_exp_q_, q2_);
    BigInt noise = crt_square(hp, hq);
    // (1 + N)^m = 1 + m N mod N^2.
    BigInt c = m * n_;
    c += 1;
    c *= noise;
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), n2_.get_mpz_t());
    return c;
  }

  BigInt decrypt(const BigInt& c) const override {
    BigInt mp = l_func(pow(c % p2_, p_ - 1, p2_), p_) * hp_;
    mpz_mod(mp.get_mpz_t(), mp.get_mpz_t(), p_.get_mpz_t());
    BigInt mq = l_func(pow(c % q2_, q_ - 1, q2_), q_) * hq_;
    mpz_mod(mq.get_mpz_t(), mq.get_mpz_t(), q_.get_mpz_t());
    BigInt t = (mp - mq) * q_inv_p_;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), p_.get_mpz_t());
    return mq + q_ * t;
  }

  void add_inplace(BigInt& acc, const BigInt& b) const override {
    mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), b.get_mpz_t());
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), n2_.get_mpz_t());
  }

  BigInt scalar_mul(const BigInt& c, const BigInt& k) const override {
    return pow(c, k, n2_);
  }

  std::vector<BigInt> secret_fields() const override { return {p_, q_}; }

 private:
  static BigInt pow(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(),
             mod.get_mpz_t());
    return out;
  }

  static BigInt l_func(const BigInt& x, const BigInt& d) {
    BigInt out = x - 1;
    mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), d.get_mpz_t());
    return out;
  }

  bool coprime_with_n(const BigInt& r) const {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
    return g == 1;
  }

  // x = hp mod p^2, x = hq mod q^2.
  BigInt crt_square(const BigInt& hp, const BigInt& hq) const {
    BigInt t = (hp - hq) * q2_inv_p2_;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), p2_.get_mpz_t());
    return hq + q2_ * t;
  }

  BigInt p_, q_, n_, n2_, p2_, q2_;
  BigInt enc_exp_p_, enc_exp_q_, q2_inv_p2_;
  BigInt hp_, hq_, q_inv_p_;
  mutable inche::detail::Csprng noise_;
};

BigInt random_prime(inche::detail::Csprng& rng, unsigned bits) {
  BigInt candidate = rng.top_heavy_bits(bits);
  BigInt prime;
  mpz_nextprime(prime.get_mpz_t(), candidate.get_mpz_t());
  return prime;
}

}  // namespace

std::shared_ptr<const Backend> make_paillier(const SchemeParams& params) {
  inche::detail::Csprng rng(params.seed, "inche/paillier/keygen");
  const unsigned p_bits = (params.modulus_bits + 1) / 2;
  const unsigned q_bits = params.modulus_bits / 2;
  for (;;) {
    BigInt p = random_prime(rng, p_bits);
    BigInt q = random_prime(rng, q_bits);
    if (p == q) continue;
    BigInt n = p * q;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) != params.modulus_bits) continue;
    return std::make_shared<PaillierBackend>(params, std::move(p),
                                             std::move(q));
  }
}

std::shared_ptr<const Backend> restore_paillier(const SchemeParams& params,
                                                const BigInt& p,
                                                const BigInt& q) {
  if (mpz_probab_prime_p(p.get_mpz_t(), 25) == 0 ||
      mpz_probab_prime_p(q.get_mpz_t(), 25) == 0) {
    throw DataError("paillier key blob: factor is not prime");
  }
  BigInt n = p * q;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) != params.modulus_bits) {
    throw DataError("paillier key blob: modulus size mismatch");
  }
  return std::make_shared<PaillierBackend>(params, p, q);
}

}  // namespace inche::he::detail
