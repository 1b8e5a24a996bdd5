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

#include "gs/io.hpp"

#include <charconv>
#include <system_error>

#include "gs/errors.hpp"

#ifdef _WIN32
#include <process.h>
#define GS_GETPID _getpid
#else
#include <unistd.h>
#define GS_GETPID getpid
#endif

namespace gs {

AtomicFile::AtomicFile(std::filesystem::path dest, std::ios_base::openmode mode)
    : dest_(std::move(dest)) {
  if (dest_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(dest_.parent_path(), ec);
  }
  tmp_ = dest_;
  tmp_ += ".tmp." + std::to_string(GS_GETPID());
  stream_.open(tmp_, mode | std::ios_base::trunc);
  if (!stream_) {
    throw RuntimeError("cannot open " + tmp_.string() + " for writing");
  }
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    stream_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicFile::commit() {
  stream_.flush();
  if (!stream_) {
    throw RuntimeError("write failed for " + dest_.string());
  }
  stream_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_, dest_, ec);
  if (ec) {
    std::filesystem::remove(tmp_, ec);
    throw RuntimeError("cannot rename temp file onto " + dest_.string());
  }
  committed_ = true;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("bad number '" + s + "' in " + context);
  }
  return v;
}

} // namespace gs
