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

#include "gs/vectorize.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "gs/errors.hpp"
#include "gs/io.hpp"
#include "gs/rng.hpp"

namespace gs {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::uint32_t TfidfVectorizer::bucket_of(std::string_view token, int num_buckets) {
  return static_cast<std::uint32_t>(rng::fnv1a64(token) %
                                    static_cast<std::uint64_t>(num_buckets));
}

TfidfVectorizer TfidfVectorizer::fit(const Catalog& catalog, int num_buckets,
                                     std::uint64_t seed) {
  if (catalog.empty()) throw ValidationError("empty corpus");
  if (num_buckets < 64) throw ValidationError("num_buckets must be >= 64");

  Eigen::VectorXd df = Eigen::VectorXd::Zero(num_buckets);
  for (const auto& rec : catalog.titles()) {
    std::set<std::uint32_t> seen;
    for (const auto& token : tokenize(rec.text)) {
      seen.insert(bucket_of(token, num_buckets));
    }
    for (std::uint32_t b : seen) df[b] += 1.0;
  }

  TfidfVectorizer v;
  v.num_buckets_ = num_buckets;
  v.seed_ = seed;
  const double n = static_cast<double>(catalog.size());
  v.idf_ = ((n + 1.0) / (df.array() + 1.0)).log() + 1.0;
  return v;
}

Eigen::VectorXd TfidfVectorizer::transform(std::string_view text, int out_dim) const {
  if (out_dim < 1) throw ValidationError("out_dim must be >= 1");
  if (out_dim > num_buckets_) {
    throw ValidationError("out_dim exceeds num_buckets; no projection can widen features");
  }

  std::unordered_map<std::uint32_t, double> tf;
  for (const auto& token : tokenize(text)) {
    tf[bucket_of(token, num_buckets_)] += 1.0;
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(out_dim);
  if (out_dim == num_buckets_) {
    for (const auto& [bucket, count] : tf) out[bucket] = count * idf_[bucket];
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(out_dim));
    const std::uint64_t base = seed_ ^ rng::fnv1a64("proj");
    for (const auto& [bucket, count] : tf) {
      const double w = count * idf_[bucket];
      std::uint64_t state = base + static_cast<std::uint64_t>(bucket) * 0x9e3779b97f4a7c15ULL;
      for (int j = 0; j < out_dim; ++j) {
        const bool positive = (rng::splitmix64(state) >> 63) != 0;
        out[j] += positive ? w * scale : -w * scale;
      }
    }
  }

  const double norm = out.norm();
  if (norm > 0.0) out /= norm;
  return out;
}

FeatureMatrix TfidfVectorizer::transform_catalog(const Catalog& catalog, int out_dim) const {
  FeatureMatrix fm;
  fm.ids.reserve(catalog.size());
  fm.rows.resize(static_cast<Eigen::Index>(catalog.size()), out_dim);
  Eigen::Index r = 0;
  for (const auto& rec : catalog.titles()) {
    fm.ids.push_back(rec.id);
    fm.rows.row(r++) = transform(rec.text, out_dim).transpose();
  }
  return fm;
}

namespace {

bool is_csv(const std::filesystem::path& path) { return path.extension() == ".csv"; }

void check_row(const std::string& id, const Eigen::VectorXd& row) {
  if (!row.allFinite()) {
    throw ValidationError("non-finite feature value for id '" + id + "'");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

} // namespace

FeatureMatrix load_features(const std::filesystem::path& path,
                            std::optional<Eigen::Index> expected_dim) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open features file " + path.string());

  std::vector<std::string> ids;
  std::vector<Eigen::VectorXd> rows;
  std::unordered_map<std::string, std::size_t> seen;
  Eigen::Index dim = -1;

  auto add_row = [&](const std::string& id, Eigen::VectorXd row) {
    if (id.empty()) throw ValidationError("empty id in " + path.string());
    check_row(id, row);
    if (dim < 0) dim = row.size();
    if (row.size() != dim) {
      throw ValidationError("ragged dimensions in " + path.string() + ": id '" + id +
                            "' has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(dim));
    }
    auto it = seen.find(id);
    if (it != seen.end()) {
      if (rows[it->second] == row) return; // exact duplicate row, drop it
      throw ValidationError("conflicting duplicate id '" + id + "' in " + path.string());
    }
    seen.emplace(id, rows.size());
    ids.push_back(id);
    rows.push_back(std::move(row));
  };

  std::string line;
  if (is_csv(path)) {
    if (!std::getline(in, line)) throw ValidationError("empty features file " + path.string());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto fields = split_csv_line(line);
      if (fields.size() < 2) {
        throw ValidationError("bad row at line " + std::to_string(lineno) + " in " +
                              path.string());
      }
      Eigen::VectorXd row(static_cast<Eigen::Index>(fields.size() - 1));
      for (std::size_t i = 1; i < fields.size(); ++i) {
        row[static_cast<Eigen::Index>(i - 1)] =
            parse_double(fields[i], path.string() + ":" + std::to_string(lineno));
      }
      add_row(fields[0], std::move(row));
    }
  } else {
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j["id"].is_string() ||
          !j.contains("vector") || !j["vector"].is_array()) {
        throw ValidationError("malformed record at line " + std::to_string(lineno) + " in " +
                              path.string());
      }
      const auto& vec = j["vector"];
      Eigen::VectorXd row(static_cast<Eigen::Index>(vec.size()));
      Eigen::Index i = 0;
      for (const auto& x : vec) {
        if (!x.is_number()) {
          throw ValidationError("non-numeric vector entry at line " + std::to_string(lineno) +
                                " in " + path.string());
        }
        row[i++] = x.get<double>();
      }
      add_row(j["id"].get<std::string>(), std::move(row));
    }
  }

  if (ids.empty()) throw ValidationError("no feature rows in " + path.string());
  if (expected_dim && dim != *expected_dim) {
    throw ValidationError("dimension mismatch in " + path.string() + ": found " +
                          std::to_string(dim) + ", expected " + std::to_string(*expected_dim));
  }

  FeatureMatrix fm;
  fm.ids = std::move(ids);
  fm.rows.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    fm.rows.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  }
  return fm;
}

void save_features(const FeatureMatrix& features, const std::filesystem::path& path) {
  AtomicFile file(path);
  auto& out = file.stream();
  if (is_csv(path)) {
    out << "id";
    for (Eigen::Index j = 0; j < features.dim(); ++j) out << ",v" << j;
    out << '\n';
    for (Eigen::Index r = 0; r < features.size(); ++r) {
      out << features.ids[static_cast<std::size_t>(r)];
      for (Eigen::Index j = 0; j < features.dim(); ++j) {
        out << ',' << format_double(features.rows(r, j));
      }
      out << '\n';
    }
  } else {
    for (Eigen::Index r = 0; r < features.size(); ++r) {
      out << "{\"id\":" << nlohmann::json(features.ids[static_cast<std::size_t>(r)]).dump()
          << ",\"vector\":[";
      for (Eigen::Index j = 0; j < features.dim(); ++j) {
        if (j > 0) out << ',';
        out << format_double(features.rows(r, j));
      }
      out << "]}\n";
    }
  }
  file.commit();
}

Eigen::VectorXd label_row(const TitleRecord& record, const LabelVocab& vocab) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(vocab.size());
  for (const auto& [source, genres] : record.source_labels) {
    for (const auto& g : genres) {
      if (auto idx = vocab.find(g)) row[*idx] = 1.0;
    }
  }
  return row;
}

Aligned align(const FeatureMatrix& features, const Catalog& catalog, const LabelVocab& vocab) {
  std::unordered_map<std::string, Eigen::Index> row_of;
  for (std::size_t i = 0; i < features.ids.size(); ++i) {
    row_of.emplace(features.ids[i], static_cast<Eigen::Index>(i));
  }

  Aligned out;
  std::vector<Eigen::Index> feature_rows;
  std::vector<Eigen::VectorXd> labels;
  for (const auto& rec : catalog.titles()) {
    auto it = row_of.find(rec.id);
    if (it == row_of.end()) {
      ++out.dropped_catalog_titles;
      continue;
    }
    Eigen::VectorXd y = label_row(rec, vocab);
    if (y.maxCoeff() <= 0.0) {
      ++out.dropped_unlabeled;
      continue;
    }
    out.features.ids.push_back(rec.id);
    feature_rows.push_back(it->second);
    labels.push_back(std::move(y));
  }
  for (const auto& id : features.ids) {
    if (catalog.find(id) == nullptr) ++out.dropped_feature_rows;
  }

  if (feature_rows.empty()) {
    throw ValidationError("no overlap between features and labeled catalog titles");
  }

  out.features.rows.resize(static_cast<Eigen::Index>(feature_rows.size()), features.dim());
  out.labels.resize(static_cast<Eigen::Index>(labels.size()), vocab.size());
  for (std::size_t r = 0; r < feature_rows.size(); ++r) {
    out.features.rows.row(static_cast<Eigen::Index>(r)) = features.rows.row(feature_rows[r]);
    out.labels.row(static_cast<Eigen::Index>(r)) = labels[r].transpose();
  }
  return out;
}

} // namespace gs
