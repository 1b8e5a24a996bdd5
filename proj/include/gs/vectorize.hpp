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

#ifndef GS_VECTORIZE_HPP
#define GS_VECTORIZE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gs/corpus.hpp"

namespace gs {

/// Dense row-per-title feature vectors. All entries finite, ids unique,
/// one row per id.
struct FeatureMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd rows;

  Eigen::Index dim() const { return rows.cols(); }
  Eigen::Index size() const { return rows.rows(); }
};

/// Lowercased tokens split on non-alphanumeric characters.
std::vector<std::string> tokenize(std::string_view text);

/// Hashed TF-IDF with an optional signed random projection. The built-in
/// stand-in for externally computed text embeddings: no vocabulary files,
/// deterministic per seed.
///
/// Tokens hash to buckets with FNV-1a (64-bit) mod num_buckets and
/// idf[b] = ln((N+1)/(df_b+1)) + 1. The projection matrix has entries
/// +-1/sqrt(out_dim), its sign stream generated per bucket by splitmix64
/// from (seed, "proj", bucket), so rows never need materializing.
class TfidfVectorizer {
public:
  static TfidfVectorizer fit(const Catalog& catalog, int num_buckets, std::uint64_t seed);

  /// TF counts x idf, optional projection to out_dim, then L2 norm.
  /// All-zero input stays the zero vector. out_dim == num_buckets skips
  /// the projection; out_dim > num_buckets is an error.
  Eigen::VectorXd transform(std::string_view text, int out_dim) const;

  /// transform() over every title, rows in catalog order.
  FeatureMatrix transform_catalog(const Catalog& catalog, int out_dim) const;

  int num_buckets() const { return num_buckets_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::VectorXd& idf() const { return idf_; }

  static std::uint32_t bucket_of(std::string_view token, int num_buckets);

private:
  int num_buckets_ = 0;
  std::uint64_t seed_ = 0;
  Eigen::VectorXd idf_;
};

/// Reads id->vector records: JSON Lines {"id":, "vector": [...]} or CSV
/// with header `id,v0,v1,...` (picked by .csv extension). Uniform
/// dimensionality enforced; a ragged row or a conflicting duplicate id is
/// an error naming the id; an exact duplicate row is dropped.
FeatureMatrix load_features(const std::filesystem::path& path,
                            std::optional<Eigen::Index> expected_dim = std::nullopt);

/// Inverse of load_features; loss-free at 64-bit (shortest round-trip
/// decimal formatting). Format picked by extension as in load_features.
void save_features(const FeatureMatrix& features, const std::filesystem::path& path);

/// Binary label row for a title: union of its sources' genres restricted
/// to the vocabulary.
Eigen::VectorXd label_row(const TitleRecord& record, const LabelVocab& vocab);

struct Aligned {
  FeatureMatrix features;
  Eigen::MatrixXd labels; // n x G, rows match features.ids
  std::size_t dropped_feature_rows = 0;   // feature ids absent from the catalog
  std::size_t dropped_catalog_titles = 0; // catalog titles without features
  std::size_t dropped_unlabeled = 0;      // titles with no in-vocab label
};

/// Restricts features and catalog labels to their id intersection, rows
/// in catalog order. Titles whose labels all fall outside the vocabulary
/// are dropped and counted. Empty intersection is an error.
Aligned align(const FeatureMatrix& features, const Catalog& catalog, const LabelVocab& vocab);

} // namespace gs

#endif // GS_VECTORIZE_HPP
