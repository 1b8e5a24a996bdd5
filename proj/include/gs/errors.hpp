// Copyright (c) 2026 the genre-spectrum authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#ifndef GS_ERRORS_HPP
#define GS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gs {

/// Bad inputs or files that fail validation (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Failures mid-computation: I/O, NaN loss, corrupt state (CLI exit code 3).
class RuntimeError : public std::runtime_error {
public:
  explicit RuntimeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gs

#endif // GS_ERRORS_HPP
