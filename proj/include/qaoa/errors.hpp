// Copyright 2026 The qaoa-exactcover Authors
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

#ifndef QAOA_ERRORS_HPP
#define QAOA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qaoa {

/// Raised for malformed inputs and violated preconditions. The CLI maps it to
/// exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace qaoa

#endif  // QAOA_ERRORS_HPP
