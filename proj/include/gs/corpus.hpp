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

#ifndef GS_CORPUS_HPP
#define GS_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gs {

/// One catalog entry. Genre names inside source_labels are stored in
/// canonical form (lowercased, trimmed, inner whitespace collapsed) and
/// sources with no labels are dropped at ingest, so a source present in
/// the map always expresses an opinion.
struct TitleRecord {
  std::string id;
  std::string title;
  std::string text; // synopsis, reviews, etc., concatenated
  std::map<std::string, std::set<std::string>> source_labels;
  long long votes = 0;

  bool operator==(const TitleRecord&) const = default;
};

struct Rejection {
  std::size_t line = 0;
  std::string reason;
};

/// Immutable after construction; safe for concurrent reads.
class Catalog {
public:
  Catalog() = default;

  /// Validates id uniqueness and per-record invariants; throws
  /// ValidationError on the first violation. Intended for records built
  /// in code — file ingest goes through parse_catalog, which rejects
  /// per line instead of throwing.
  static Catalog from_records(std::vector<TitleRecord> records);

  const std::vector<TitleRecord>& titles() const { return titles_; }
  std::size_t size() const { return titles_.size(); }
  bool empty() const { return titles_.empty(); }

  const TitleRecord* find(std::string_view id) const;

private:
  std::vector<TitleRecord> titles_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ParseResult {
  Catalog catalog;
  std::vector<Rejection> rejections;
};

/// Reads line-delimited JSON records {id, title, text, labels, votes}.
/// Malformed or invalid lines are rejected with a reason and parsing
/// continues; an unreadable stream throws. Ordering is preserved and a
/// duplicate id rejects the later record.
ParseResult parse_catalog(std::istream& in);

/// Inverse of parse_catalog for valid records (round-trip identity).
void save_catalog(const Catalog& catalog, std::ostream& out);

/// CSV `line,reason`.
void save_rejections(const std::vector<Rejection>& rejections, std::ostream& out);

/// Lowercase, trim, collapse internal whitespace.
std::string normalize_genre(std::string_view raw);

/// Lexicographically ordered canonical genre names.
class LabelVocab {
public:
  LabelVocab() = default;
  explicit LabelVocab(std::vector<std::string> genres);

  const std::vector<std::string>& genres() const { return genres_; }
  int size() const { return static_cast<int>(genres_.size()); }
  std::optional<int> find(std::string_view genre) const;
  const std::string& name(int index) const { return genres_.at(static_cast<std::size_t>(index)); }

private:
  std::vector<std::string> genres_;
  std::unordered_map<std::string, int> index_;
};

/// All normalized genre names appearing in at least min_count titles
/// (counting each title once however many sources list the genre).
LabelVocab build_label_vocab(const Catalog& catalog, int min_count = 1);

/// Genres assigned by more than half of the sources that list the title:
/// count >= ceil((s+1)/2) over the record's s sources. Names outside the
/// vocabulary are ignored. May be empty — callers must handle that.
std::vector<int> primary_genres(const TitleRecord& record, const LabelVocab& vocab);

/// Decade buckets over IMDb-style vote counts: [0,10), [10,100), ...,
/// [1e6, 1e7]; votes past 1e7 clamp into the last bucket.
int popularity_bucket(long long votes);
constexpr int kNumBuckets = 7;

/// Inclusive lower / exclusive upper vote bound of a bucket (upper bound
/// of bucket 6 reported as 1e7).
std::pair<long long, long long> bucket_bounds(int bucket);

struct SplitAssignment {
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  std::vector<std::string> test_ids;
};

/// Seeded-shuffle 60/20/20 partition; val and test sizes are round(0.2*n)
/// and the remainder goes to train. Requires at least 5 titles.
SplitAssignment split(const Catalog& catalog, std::uint64_t seed);

struct SynthParams {
  int num_titles = 1000;
  int num_genres = 8;
  bool noise_by_votes = false;
  std::uint64_t seed = 0;

  // Generator shape knobs. Defaults produce corpora whose neighborhoods
  // degrade with popularity the way real catalog metadata does.
  int tokens_per_genre_pool = 40;
  int noise_pool_size = 3000;
  int min_tokens_per_title = 40;
  int max_tokens_per_title = 80;
  double base_noise_fraction = 0.4;  // used when noise_by_votes is off
  double low_votes_noise = 0.85;     // noise fraction as votes -> 1
  double high_votes_noise = 0.10;    // noise fraction as votes -> 1e7
  double label_dropout = 0.15;       // per source, per true genre
  double label_flip = 0.10;          // per source: add one wrong genre
};

/// Per-title generation bookkeeping, persisted as the ground-truth sidecar.
struct SynthTruth {
  std::string id;
  std::vector<std::string> latent_genres;
  double noise_fraction = 0.0; // realized fraction of noise tokens
};

struct SynthCorpus {
  Catalog catalog;
  std::vector<SynthTruth> truth;
};

/// Deterministic synthetic catalog: every title draws 1-3 latent genres,
/// text from genre-specific token pools plus shared noise tokens, votes
/// log-uniform over the seven decade buckets, and per-source labels equal
/// to the latent genres with dropout/flip noise.
SynthCorpus synth_corpus(const SynthParams& params);

/// CSV `id,latent_genres,noise_fraction` with ';'-joined genres.
void save_synth_truth(const std::vector<SynthTruth>& truth, std::ostream& out);

} // namespace gs

#endif // GS_CORPUS_HPP
