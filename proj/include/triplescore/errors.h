// Copyright 2026 The Triplescore Authors.
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

#ifndef TRIPLESCORE_ERRORS_H_
#define TRIPLESCORE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triplescore {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration or unusable input set (empty corpus, empty vocabulary).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed file or line. Carries the 1-based line number when known and the
// byte offset inside the line when the failure is local to a span.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line = 0,
             std::size_t offset = npos)
      : Error(Describe(message, line, offset)), line_(line), offset_(offset) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  static std::string Describe(const std::string &message, std::size_t line,
                              std::size_t offset);

  std::size_t line_;
  std::size_t offset_;
};

// A word was looked up that the vocabulary does not contain.
class LookupError : public Error {
 public:
  explicit LookupError(const std::string &word)
      : Error("word not in vocabulary: " + word), word_(word) {}

  const std::string &word() const { return word_; }

 private:
  std::string word_;
};

// Input for which an operation is mathematically undefined (zero-norm vector,
// empty metric input).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Violated precondition on an argument (empty evidence, score out of range).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Non-finite values during training.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace triplescore

#endif  // TRIPLESCORE_ERRORS_H_
