// Copyright 2026 The Authors.
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

#ifndef MQO_ERROR_HPP_
#define MQO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mqo {

/// Base class for every error raised by the library. `kind()` is stable and
/// is what the command-line front end maps onto exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    kMalformedInput,
    kInconsistentInput,
    kInvalidArgument,
    kConfiguration,
    kResourceLimit,
    kUnsupportedStructure,
    kInvariant,
  };

  Error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct MalformedInputError : Error {
  explicit MalformedInputError(const std::string& what)
      : Error(Kind::kMalformedInput, what) {}
};

struct InconsistentInputError : Error {
  explicit InconsistentInputError(const std::string& what)
      : Error(Kind::kInconsistentInput, what) {}
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what)
      : Error(Kind::kInvalidArgument, what) {}
};

struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& what)
      : Error(Kind::kConfiguration, what) {}
};

struct ResourceLimitError : Error {
  explicit ResourceLimitError(const std::string& what)
      : Error(Kind::kResourceLimit, what) {}
};

// Raised when an operation that is only defined on AND-forests meets an
// eq-node with more than one producer.
struct UnsupportedStructureError : Error {
  explicit UnsupportedStructureError(const std::string& what)
      : Error(Kind::kUnsupportedStructure, what) {}
};

struct InvariantError : Error {
  explicit InvariantError(const std::string& what)
      : Error(Kind::kInvariant, what) {}
};

}  // namespace mqo

#endif  // MQO_ERROR_HPP_
