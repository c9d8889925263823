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

#ifndef INCHE_ERRORS_HPP_
#define INCHE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace inche {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters or configuration that violate a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A plaintext outside the configured domain or the backend's plaintext space.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Ciphertexts from different schemes or keys were combined, or a ciphertext
// is not an element of the backend's ciphertext group.
class SchemeMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed input data (CSV cells, serialized keys, reports).
class DataError : public Error {
 public:
  using Error::Error;
};

// A decryption check failed; the benchmark refuses to report timings.
class CorrectnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace inche

#endif  // INCHE_ERRORS_HPP_
