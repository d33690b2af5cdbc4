#ifndef LEX2SENT_DATASET_HPP_
#define LEX2SENT_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lex2sent/corpus.hpp"

namespace lex2sent {

enum class DatasetFormat { labeled_dirs, review_csv, tweet_csv, jsonl };

DatasetFormat dataset_format_from_string(const std::string& name);
const char* to_string(DatasetFormat format);

struct LoadOptions {
  std::size_t min_chars = 0;  // drop raw texts shorter than this when > 0
};

struct LoadedDataset {
  Corpus corpus;
  std::size_t skipped_malformed = 0;  // unparseable rows
  std::size_t dropped_by_filter = 0;  // 3-star reviews, neutral tweets, short texts
};

// Loads raw documents (no preprocessing). Review format: 4-5 stars map to
// positive, 1-2 to negative, 3-star rows are dropped. Tweet format: neutral
// rows are dropped. labeled-dirs expects pos/ and neg/ subdirectories of one
// text file per document. Throws IoError on unreadable paths and DataError
// when no documents survive filtering.
LoadedDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                           const LoadOptions& options = {});

struct SplitResult {
  Corpus train;
  Corpus test;
  std::vector<int> train_source_ids;  // original corpus ids per side
  std::vector<int> test_source_ids;
};

// Stratified split: per gold-label stratum, round(fraction * n) documents go
// to the train side; document order is preserved within each side and ids
// are re-densified. Reproducible for a fixed seed.
SplitResult split_train_test(const Corpus& corpus, double fraction, std::uint64_t seed);

}  // namespace lex2sent

#endif  // LEX2SENT_DATASET_HPP_
