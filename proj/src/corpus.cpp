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

#include "gs/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "gs/errors.hpp"
#include "gs/io.hpp"
#include "gs/rng.hpp"

namespace gs {

namespace {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Normalizes label sets and discards sources left without labels.
std::map<std::string, std::set<std::string>>
normalize_labels(const std::map<std::string, std::set<std::string>>& raw) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [source, genres] : raw) {
    std::set<std::string> cleaned;
    for (const auto& g : genres) {
      std::string n = normalize_genre(g);
      if (!n.empty()) cleaned.insert(std::move(n));
    }
    if (!cleaned.empty()) out.emplace(source, std::move(cleaned));
  }
  return out;
}

// Empty reason means the record is valid.
std::string validate_record(const TitleRecord& rec) {
  if (rec.id.empty()) return "missing id";
  if (rec.votes < 0) return "negative votes";
  if (rec.source_labels.empty()) return "no labels";
  return {};
}

} // namespace

Catalog Catalog::from_records(std::vector<TitleRecord> records) {
  Catalog catalog;
  catalog.titles_.reserve(records.size());
  for (auto& rec : records) {
    rec.source_labels = normalize_labels(rec.source_labels);
    if (std::string reason = validate_record(rec); !reason.empty()) {
      throw ValidationError("record '" + rec.id + "': " + reason);
    }
    auto [it, inserted] = catalog.index_.emplace(rec.id, catalog.titles_.size());
    if (!inserted) throw ValidationError("duplicate id '" + rec.id + "'");
    catalog.titles_.push_back(std::move(rec));
  }
  return catalog;
}

const TitleRecord* Catalog::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &titles_[it->second];
}

ParseResult parse_catalog(std::istream& in) {
  if (!in) throw RuntimeError("unreadable catalog stream");

  std::vector<TitleRecord> records;
  std::vector<Rejection> rejections;
  std::unordered_map<std::string, std::size_t> seen;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      rejections.push_back({lineno, "malformed json"});
      continue;
    }

    TitleRecord rec;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
      rejections.push_back({lineno, "missing id"});
      continue;
    }
    rec.id = j["id"].get<std::string>();

    if (j.contains("title")) {
      if (!j["title"].is_string()) {
        rejections.push_back({lineno, "bad title"});
        continue;
      }
      rec.title = j["title"].get<std::string>();
    }
    if (j.contains("text")) {
      if (!j["text"].is_string()) {
        rejections.push_back({lineno, "bad text"});
        continue;
      }
      rec.text = j["text"].get<std::string>();
    }
    if (j.contains("votes")) {
      if (!j["votes"].is_number_integer()) {
        rejections.push_back({lineno, "bad votes"});
        continue;
      }
      rec.votes = j["votes"].get<long long>();
    }

    bool bad_labels = false;
    if (j.contains("labels")) {
      if (!j["labels"].is_object()) {
        bad_labels = true;
      } else {
        for (const auto& [source, genres] : j["labels"].items()) {
          if (!genres.is_array()) {
            bad_labels = true;
            break;
          }
          std::set<std::string> set;
          for (const auto& g : genres) {
            if (!g.is_string()) {
              bad_labels = true;
              break;
            }
            set.insert(g.get<std::string>());
          }
          if (bad_labels) break;
          rec.source_labels.emplace(source, std::move(set));
        }
      }
    }
    if (bad_labels) {
      rejections.push_back({lineno, "bad labels"});
      continue;
    }

    rec.source_labels = normalize_labels(rec.source_labels);
    if (std::string reason = validate_record(rec); !reason.empty()) {
      rejections.push_back({lineno, reason});
      continue;
    }
    if (!seen.emplace(rec.id, lineno).second) {
      rejections.push_back({lineno, "duplicate id"});
      continue;
    }
    records.push_back(std::move(rec));
  }

  ParseResult result;
  result.catalog = Catalog::from_records(std::move(records));
  result.rejections = std::move(rejections);
  return result;
}

void save_catalog(const Catalog& catalog, std::ostream& out) {
  for (const auto& rec : catalog.titles()) {
    ordered_json j;
    j["id"] = rec.id;
    j["title"] = rec.title;
    j["text"] = rec.text;
    ordered_json labels = ordered_json::object();
    for (const auto& [source, genres] : rec.source_labels) {
      labels[source] = std::vector<std::string>(genres.begin(), genres.end());
    }
    j["labels"] = std::move(labels);
    j["votes"] = rec.votes;
    out << j.dump() << '\n';
  }
}

void save_rejections(const std::vector<Rejection>& rejections, std::ostream& out) {
  out << "line,reason\n";
  for (const auto& r : rejections) {
    out << r.line << ',' << csv_field(r.reason) << '\n';
  }
}

std::string normalize_genre(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

LabelVocab::LabelVocab(std::vector<std::string> genres) : genres_(std::move(genres)) {
  std::sort(genres_.begin(), genres_.end());
  genres_.erase(std::unique(genres_.begin(), genres_.end()), genres_.end());
  for (std::size_t i = 0; i < genres_.size(); ++i) {
    index_.emplace(genres_[i], static_cast<int>(i));
  }
}

std::optional<int> LabelVocab::find(std::string_view genre) const {
  auto it = index_.find(std::string(genre));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelVocab build_label_vocab(const Catalog& catalog, int min_count) {
  if (catalog.empty()) throw ValidationError("empty catalog");
  if (min_count < 1) throw ValidationError("min_count must be >= 1");

  std::map<std::string, int> title_counts;
  for (const auto& rec : catalog.titles()) {
    std::set<std::string> in_title;
    for (const auto& [source, genres] : rec.source_labels) {
      in_title.insert(genres.begin(), genres.end());
    }
    for (const auto& g : in_title) ++title_counts[g];
  }

  std::vector<std::string> kept;
  for (const auto& [genre, count] : title_counts) {
    if (count >= min_count) kept.push_back(genre);
  }
  if (kept.empty()) throw ValidationError("no genres above threshold");
  return LabelVocab(std::move(kept));
}

std::vector<int> primary_genres(const TitleRecord& record, const LabelVocab& vocab) {
  const std::size_t sources = record.source_labels.size();
  if (sources == 0) return {};
  const std::size_t majority = (sources + 2) / 2; // ceil((s+1)/2)

  std::map<std::string, std::size_t> counts;
  for (const auto& [source, genres] : record.source_labels) {
    for (const auto& g : genres) ++counts[g];
  }

  std::vector<int> out;
  for (const auto& [genre, count] : counts) {
    if (count < majority) continue;
    if (auto idx = vocab.find(genre)) out.push_back(*idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int popularity_bucket(long long votes) {
  if (votes < 0) throw ValidationError("negative votes");
  int bucket = 0;
  for (long long threshold = 10; bucket < kNumBuckets - 1 && votes >= threshold;
       threshold *= 10) {
    ++bucket;
  }
  return bucket;
}

std::pair<long long, long long> bucket_bounds(int bucket) {
  if (bucket < 0 || bucket >= kNumBuckets) throw ValidationError("bucket out of range");
  long long lo = 1;
  for (int b = 0; b < bucket; ++b) lo *= 10;
  return {bucket == 0 ? 0 : lo, lo * 10};
}

SplitAssignment split(const Catalog& catalog, std::uint64_t seed) {
  const std::size_t n = catalog.size();
  if (n < 5) throw ValidationError("catalog too small to split (need >= 5 titles)");

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& rec : catalog.titles()) ids.push_back(rec.id);

  auto eng = rng::substream(seed, "split");
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = rng::uniform_index(eng, i + 1);
    std::swap(ids[i], ids[j]);
  }

  // round(n/5) in integer arithmetic, remainder to train
  const std::size_t n_val = (2 * n + 5) / 10;
  const std::size_t n_test = n_val;
  const std::size_t n_train = n - n_val - n_test;

  SplitAssignment out;
  out.train_ids.assign(ids.begin(), ids.begin() + n_train);
  out.val_ids.assign(ids.begin() + n_train, ids.begin() + n_train + n_val);
  out.test_ids.assign(ids.begin() + n_train + n_val, ids.end());
  return out;
}

namespace {

const char* kGenreNames[] = {
    "comedy",   "drama",    "horror",  "action",    "thriller", "romance",
    "western",  "scifi",    "mystery", "animation", "fantasy",  "crime",
    "adventure", "musical", "war",     "sport",     "biography", "history",
    "family",   "noir",     "documentary", "music", "short",    "disaster"};

std::string synth_genre_name(int g) {
  constexpr int known = static_cast<int>(sizeof(kGenreNames) / sizeof(kGenreNames[0]));
  if (g < known) return kGenreNames[g];
  return "genre" + std::to_string(g);
}

} // namespace

SynthCorpus synth_corpus(const SynthParams& p) {
  if (p.num_genres < 2 || p.num_titles < p.num_genres) {
    throw ValidationError("synth_corpus needs num_titles >= num_genres >= 2");
  }
  if (p.min_tokens_per_title < 1 || p.max_tokens_per_title < p.min_tokens_per_title) {
    throw ValidationError("bad token count range");
  }

  auto eng = rng::substream(p.seed, "synth");

  std::vector<std::string> genre_names(p.num_genres);
  std::vector<std::vector<std::string>> genre_pool(p.num_genres);
  for (int g = 0; g < p.num_genres; ++g) {
    genre_names[g] = synth_genre_name(g);
    genre_pool[g].reserve(p.tokens_per_genre_pool);
    for (int t = 0; t < p.tokens_per_genre_pool; ++t) {
      genre_pool[g].push_back(genre_names[g] + "w" + std::to_string(t));
    }
  }
  std::vector<std::string> noise_pool(p.noise_pool_size);
  for (int t = 0; t < p.noise_pool_size; ++t) noise_pool[t] = "filler" + std::to_string(t);

  const char* source_names[] = {"imdb", "rt", "gracenote"};

  std::vector<TitleRecord> records;
  std::vector<SynthTruth> truth;
  records.reserve(p.num_titles);
  truth.reserve(p.num_titles);

  std::vector<int> genre_indices(p.num_genres);
  for (int g = 0; g < p.num_genres; ++g) genre_indices[g] = g;

  const int id_width = static_cast<int>(std::to_string(p.num_titles).size());

  for (int i = 0; i < p.num_titles; ++i) {
    TitleRecord rec;
    std::string num = std::to_string(i + 1);
    rec.id = "syn" + std::string(id_width - static_cast<int>(num.size()), '0') + num;

    // latent genres: 1-3 distinct, via a partial shuffle
    const int n_latent = 1 + static_cast<int>(rng::uniform_index(eng, 3));
    for (int j = 0; j < n_latent; ++j) {
      std::size_t pick = j + rng::uniform_index(eng, genre_indices.size() - j);
      std::swap(genre_indices[j], genre_indices[pick]);
    }
    std::vector<int> latent(genre_indices.begin(), genre_indices.begin() + n_latent);
    std::sort(latent.begin(), latent.end());

    // votes log-uniform across the seven decade buckets
    const double exponent = rng::uniform(eng, 0.0, 7.0);
    rec.votes = static_cast<long long>(std::pow(10.0, exponent));

    double noise_target = p.base_noise_fraction;
    if (p.noise_by_votes) {
      noise_target = p.low_votes_noise - (p.low_votes_noise - p.high_votes_noise) * (exponent / 7.0);
    }

    const int n_tokens =
        p.min_tokens_per_title +
        static_cast<int>(rng::uniform_index(
            eng, static_cast<std::uint64_t>(p.max_tokens_per_title - p.min_tokens_per_title + 1)));
    std::string text;
    int noise_drawn = 0;
    for (int t = 0; t < n_tokens; ++t) {
      if (!text.empty()) text += ' ';
      if (rng::uniform01(eng) < noise_target) {
        ++noise_drawn;
        text += noise_pool[rng::uniform_index(eng, noise_pool.size())];
      } else {
        const int g = latent[rng::uniform_index(eng, latent.size())];
        text += genre_pool[g][rng::uniform_index(eng, genre_pool[g].size())];
      }
    }
    rec.text = std::move(text);
    rec.title = genre_names[latent.front()] + " tale " + num;

    for (const char* source : source_names) {
      std::set<std::string> labels;
      for (int g : latent) {
        if (rng::uniform01(eng) >= p.label_dropout) labels.insert(genre_names[g]);
      }
      if (rng::uniform01(eng) < p.label_flip && p.num_genres > n_latent) {
        int wrong;
        do {
          wrong = static_cast<int>(rng::uniform_index(eng, p.num_genres));
        } while (std::find(latent.begin(), latent.end(), wrong) != latent.end());
        labels.insert(genre_names[wrong]);
      }
      if (!labels.empty()) rec.source_labels.emplace(source, std::move(labels));
    }
    if (rec.source_labels.empty()) {
      rec.source_labels.emplace("imdb", std::set<std::string>{genre_names[latent.front()]});
    }

    SynthTruth t;
    t.id = rec.id;
    for (int g : latent) t.latent_genres.push_back(genre_names[g]);
    t.noise_fraction = n_tokens > 0 ? static_cast<double>(noise_drawn) / n_tokens : 0.0;
    truth.push_back(std::move(t));
    records.push_back(std::move(rec));
  }

  SynthCorpus out;
  out.catalog = Catalog::from_records(std::move(records));
  out.truth = std::move(truth);
  return out;
}

void save_synth_truth(const std::vector<SynthTruth>& truth, std::ostream& out) {
  out << "id,latent_genres,noise_fraction\n";
  for (const auto& t : truth) {
    std::string genres;
    for (const auto& g : t.latent_genres) {
      if (!genres.empty()) genres += ';';
      genres += g;
    }
    out << csv_field(t.id) << ',' << csv_field(genres) << ','
        << format_double(t.noise_fraction) << '\n';
  }
}

} // namespace gs
