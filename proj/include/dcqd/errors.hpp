// Copyright 2026 The dcqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCQD_ERRORS_HPP
#define DCQD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dcqd {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that was required to be a valid density matrix is not one.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Raised when the angles of an input family violate the Table-I style
/// informativeness conditions (|alpha| != |beta| != 0, Im(conj(alpha) beta) != 0).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class NotCP : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

/// Linear inversion would amplify data errors beyond usefulness.
class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& what, double cond) : Error(what), cond_(cond) {}
  double cond() const noexcept { return cond_; }

 private:
  double cond_;
};

class ZeroContrast : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class SingularNoise : public Error {
 public:
  using Error::Error;
};

}  // namespace dcqd

#endif  // DCQD_ERRORS_HPP
