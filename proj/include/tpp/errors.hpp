// Copyright 2026 The tpp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TPP_ERRORS_HPP_
#define TPP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tpp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad event lists, bad model documents, mark/model
// disagreements. CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// Failures of the numerics themselves: overflow, runaway simulations,
// broken envelopes. CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DuplicateTime final : public DataError {
 public:
  using DataError::DataError;
};

class UnsortedTimes final : public DataError {
 public:
  using DataError::DataError;
};

class OutOfWindow final : public DataError {
 public:
  using DataError::DataError;
};

class MixedMarks final : public DataError {
 public:
  using DataError::DataError;
};

class NonFiniteValue final : public DataError {
 public:
  using DataError::DataError;
};

class MarkMismatch final : public DataError {
 public:
  using DataError::DataError;
};

class UnmarkedModel final : public DataError {
 public:
  using DataError::DataError;
};

class InvalidModel final : public DataError {
 public:
  using DataError::DataError;
};

class EmptySample final : public DataError {
 public:
  using DataError::DataError;
};

class ParseError final : public DataError {
 public:
  using DataError::DataError;
};

class NonFiniteResult final : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoConvergence final : public NumericError {
 public:
  using NumericError::NumericError;
};

class EventCapExceeded final : public NumericError {
 public:
  using NumericError::NumericError;
};

class InvalidEnvelope final : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonFiniteObjectiveAtStart final : public NumericError {
 public:
  using NumericError::NumericError;
};

class QuadratureFailure final : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace tpp

#endif  // TPP_ERRORS_HPP_
