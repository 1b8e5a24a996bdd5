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

#ifndef GS_IO_HPP
#define GS_IO_HPP

#include <filesystem>
#include <fstream>
#include <string>

namespace gs {

/// Write-to-temp-then-rename file writer. The destination is never touched
/// until commit(); abandoning the object removes the temp file, so failed
/// commands leave no partial outputs behind.
class AtomicFile {
public:
  explicit AtomicFile(std::filesystem::path dest,
                      std::ios_base::openmode mode = std::ios_base::out);
  ~AtomicFile();

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return stream_; }
  void commit();

private:
  std::filesystem::path dest_;
  std::filesystem::path tmp_;
  std::ofstream stream_;
  bool committed_ = false;
};

/// Shortest decimal form of a double that parses back bit-exactly.
std::string format_double(double v);

/// strtod-style parse; throws gs::ValidationError on garbage.
double parse_double(const std::string& s, const std::string& context);

} // namespace gs

#endif // GS_IO_HPP
