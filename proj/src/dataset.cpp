#include "lex2sent/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lex2sent/errors.hpp"
#include "lex2sent/rng.hpp"

namespace lex2sent {

namespace {

using nlohmann::json;

// Minimal RFC 4180 reader: quoted fields, escaped quotes, embedded newlines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  bool next_record(std::vector<std::string>& fields) {
    fields.clear();
    if (in_.peek() == EOF) return false;
    std::string field;
    bool quoted = false;
    bool any = false;
    int c;
    while ((c = in_.get()) != EOF) {
      any = true;
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            field.push_back('"');
            in_.get();
          } else {
            quoted = false;
          }
        } else {
          field.push_back(static_cast<char>(c));
        }
        continue;
      }
      if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n') {
        break;
      } else if (c != '\r') {
        field.push_back(static_cast<char>(c));
      }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
  }

 private:
  std::istream& in_;
};

std::string lowercased(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Index of the first header cell matching any candidate name, or -1.
int find_column(const std::vector<std::string>& header,
                const std::vector<std::string>& candidates) {
  for (const auto& want : candidates) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lowercased(header[i]) == want) return static_cast<int>(i);
    }
  }
  return -1;
}

void append_document(Corpus& corpus, std::string raw, std::optional<Label> label) {
  Document doc;
  doc.id = static_cast<int>(corpus.documents.size());
  doc.raw = std::move(raw);
  doc.gold_label = label;
  corpus.documents.push_back(std::move(doc));
}

std::optional<Label> label_from_rating(double rating) {
  if (rating >= 4.0) return Label::positive;
  if (rating <= 2.0) return Label::negative;
  return std::nullopt;  // 3-star band, caller drops the row
}

void load_labeled_dirs(const std::filesystem::path& path, const LoadOptions& options,
                       LoadedDataset& out) {
  for (const auto& [dir, label] :
       {std::pair{"pos", Label::positive}, std::pair{"neg", Label::negative}}) {
    const auto subdir = path / dir;
    if (!std::filesystem::is_directory(subdir)) {
      throw IoError("labeled-dirs dataset is missing directory: " + subdir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(subdir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file);
      if (!in) {
        ++out.skipped_malformed;
        continue;
      }
      std::ostringstream text;
      text << in.rdbuf();
      std::string raw = std::move(text).str();
      if (options.min_chars > 0 && raw.size() < options.min_chars) {
        ++out.dropped_by_filter;
        continue;
      }
      append_document(out.corpus, std::move(raw), label);
    }
  }
}

// The review format accepts CSV with a header or line-JSON; both carry a
// free-text field and a 1-5 star rating.
void load_review_rows(const std::filesystem::path& path, const LoadOptions& options,
                      LoadedDataset& out) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());

  int first = in.peek();
  while (first == ' ' || first == '\n' || first == '\r' || first == '\t') {
    in.get();
    first = in.peek();
  }
  const bool is_jsonl = first == '{';

  const auto take = [&](std::string text, double rating, bool parsed) {
    if (!parsed || rating < 1.0 || rating > 5.0) {
      ++out.skipped_malformed;
      return;
    }
    const auto label = label_from_rating(rating);
    if (!label || (options.min_chars > 0 && text.size() < options.min_chars)) {
      ++out.dropped_by_filter;
      return;
    }
    append_document(out.corpus, std::move(text), label);
  };

  if (is_jsonl) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json row = json::parse(line, nullptr, false);
      if (row.is_discarded() || !row.is_object()) {
        ++out.skipped_malformed;
        continue;
      }
      std::string text;
      for (const char* key : {"text", "reviewText", "review"}) {
        if (row.contains(key) && row[key].is_string()) {
          text = row[key].get<std::string>();
          break;
        }
      }
      double rating = 0.0;
      bool has_rating = false;
      for (const char* key : {"rating", "overall", "stars"}) {
        if (row.contains(key) && row[key].is_number()) {
          rating = row[key].get<double>();
          has_rating = true;
          break;
        }
      }
      take(std::move(text), rating, has_rating && !text.empty());
    }
    return;
  }

  CsvReader reader(in);
  std::vector<std::string> header, fields;
  if (!reader.next_record(header)) throw DataError("empty review file: " + path.string());
  const int text_col = find_column(header, {"text", "reviewtext", "review"});
  const int rating_col = find_column(header, {"rating", "overall", "stars"});
  if (text_col < 0 || rating_col < 0) {
    throw DataError("review file lacks text/rating columns: " + path.string());
  }
  while (reader.next_record(fields)) {
    const auto max_col = static_cast<std::size_t>(std::max(text_col, rating_col));
    if (fields.size() <= max_col) {
      ++out.skipped_malformed;
      continue;
    }
    double rating = 0.0;
    bool parsed = false;
    try {
      rating = std::stod(fields[static_cast<std::size_t>(rating_col)]);
      parsed = true;
    } catch (const std::exception&) {
    }
    take(std::move(fields[static_cast<std::size_t>(text_col)]), rating, parsed);
  }
}

void load_tweet_rows(const std::filesystem::path& path, const LoadOptions& options,
                     LoadedDataset& out) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());

  CsvReader reader(in);
  std::vector<std::string> header, fields;
  if (!reader.next_record(header)) throw DataError("empty tweet file: " + path.string());
  const int text_col = find_column(header, {"text", "tweet"});
  const int sentiment_col = find_column(header, {"sentiment", "airline_sentiment", "label"});
  if (text_col < 0 || sentiment_col < 0) {
    throw DataError("tweet file lacks text/sentiment columns: " + path.string());
  }
  while (reader.next_record(fields)) {
    const auto max_col = static_cast<std::size_t>(std::max(text_col, sentiment_col));
    if (fields.size() <= max_col) {
      ++out.skipped_malformed;
      continue;
    }
    const std::string sentiment = lowercased(fields[static_cast<std::size_t>(sentiment_col)]);
    std::string text = std::move(fields[static_cast<std::size_t>(text_col)]);
    if (sentiment == "neutral") {
      ++out.dropped_by_filter;
    } else if (sentiment == "positive" || sentiment == "negative") {
      if (options.min_chars > 0 && text.size() < options.min_chars) {
        ++out.dropped_by_filter;
      } else {
        append_document(out.corpus, std::move(text),
                        sentiment == "positive" ? Label::positive : Label::negative);
      }
    } else {
      ++out.skipped_malformed;
    }
  }
}

void load_jsonl(const std::filesystem::path& path, const LoadOptions& options,
                LoadedDataset& out) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());

  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object() || !row.contains("text") ||
        !row["text"].is_string()) {
      ++out.skipped_malformed;
      continue;
    }
    std::string text = row["text"].get<std::string>();
    std::optional<Label> label;
    if (row.contains("label")) {
      const std::string value = lowercased(row["label"].get<std::string>());
      if (value == "positive") {
        label = Label::positive;
      } else if (value == "negative") {
        label = Label::negative;
      } else {
        ++out.skipped_malformed;
        continue;
      }
    }
    if (options.min_chars > 0 && text.size() < options.min_chars) {
      ++out.dropped_by_filter;
      continue;
    }
    append_document(out.corpus, std::move(text), label);
  }
}

}  // namespace

DatasetFormat dataset_format_from_string(const std::string& name) {
  if (name == "labeled-dirs") return DatasetFormat::labeled_dirs;
  if (name == "review-csv") return DatasetFormat::review_csv;
  if (name == "tweet-csv") return DatasetFormat::tweet_csv;
  if (name == "jsonl") return DatasetFormat::jsonl;
  throw DataError("unknown dataset format: " + name);
}

const char* to_string(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::labeled_dirs:
      return "labeled-dirs";
    case DatasetFormat::review_csv:
      return "review-csv";
    case DatasetFormat::tweet_csv:
      return "tweet-csv";
    case DatasetFormat::jsonl:
      return "jsonl";
  }
  return "?";
}

LoadedDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                           const LoadOptions& options) {
  if (!std::filesystem::exists(path)) {
    throw IoError("dataset path does not exist: " + path.string());
  }
  LoadedDataset out;
  out.corpus.name = path.filename().string();
  switch (format) {
    case DatasetFormat::labeled_dirs:
      load_labeled_dirs(path, options, out);
      break;
    case DatasetFormat::review_csv:
      load_review_rows(path, options, out);
      break;
    case DatasetFormat::tweet_csv:
      load_tweet_rows(path, options, out);
      break;
    case DatasetFormat::jsonl:
      load_jsonl(path, options, out);
      break;
  }
  if (out.corpus.documents.empty()) {
    throw DataError("no documents left after filtering: " + path.string());
  }
  out.corpus.refresh_positive_fraction();
  return out;
}

SplitResult split_train_test(const Corpus& corpus, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw DataError("split fraction must lie in (0, 1)");
  }

  // Three strata: positive, negative, unlabeled. Within each, a seeded
  // shuffle picks the train side; document order is restored afterwards.
  std::vector<std::vector<std::size_t>> strata(3);
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& label = corpus.documents[i].gold_label;
    const std::size_t stratum = !label ? 2 : (*label == Label::positive ? 0 : 1);
    strata[stratum].push_back(i);
  }

  Rng rng(mix_seed(seed, 0x73706c6974ULL));  // "split"
  std::vector<bool> in_train(corpus.documents.size(), false);
  for (auto& stratum : strata) {
    for (std::size_t i = stratum.size(); i > 1; --i) {
      std::swap(stratum[i - 1], stratum[rng.uniform_index(i)]);
    }
    const auto take = static_cast<std::size_t>(
        std::lround(fraction * static_cast<double>(stratum.size())));
    for (std::size_t i = 0; i < take; ++i) in_train[stratum[i]] = true;
  }

  SplitResult result;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    Corpus& side = in_train[i] ? result.train : result.test;
    auto& ids = in_train[i] ? result.train_source_ids : result.test_source_ids;
    Document doc = corpus.documents[i];
    ids.push_back(doc.id);
    doc.id = static_cast<int>(side.documents.size());
    side.documents.push_back(std::move(doc));
  }
  result.train.name = corpus.name + "/train";
  result.test.name = corpus.name + "/test";
  result.train.refresh_positive_fraction();
  result.test.refresh_positive_fraction();
  return result;
}

}  // namespace lex2sent
