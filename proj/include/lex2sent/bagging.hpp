#ifndef LEX2SENT_BAGGING_HPP_
#define LEX2SENT_BAGGING_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lex2sent/corpus.hpp"
#include "lex2sent/doc2vec.hpp"
#include "lex2sent/lbte.hpp"
#include "lex2sent/lexicon.hpp"
#include "lex2sent/preprocess.hpp"
#include "lex2sent/resampling.hpp"
#include "lex2sent/rng.hpp"

namespace lex2sent {

// Hyperparameter grid; the default 3x3x4 gives B = 36 cells.
struct GridSpec {
  std::vector<int> epochs_set{5, 10, 15};
  std::vector<int> windows_set{5, 10, 15};
  std::vector<int> dims_set{50, 100, 150, 200};

  std::size_t cells() const {
    return epochs_set.size() * windows_set.size() * dims_set.size();
  }
  void validate() const;  // all sets nonempty
};

enum class ClassifierSource { lex2sent, counting };

struct ClassifierVector {
  std::vector<double> values;
  ClassifierSource source = ClassifierSource::lex2sent;
};

enum class ThresholdKind { fixed_zero, proportion };

struct ThresholdMode {
  ThresholdKind kind = ThresholdKind::fixed_zero;
  std::optional<double> p;  // required in proportion mode

  void validate() const;
};

// How the lexicon-half embeddings are produced: trained jointly as two
// pseudo-documents appended after the corpus (default), or taken post hoc as
// the mean of the half's trained word vectors.
enum class HalfEmbedding { pseudo_doc, word_mean };

struct Lex2SentOptions {
  GridSpec grid;
  ResamplingKind resampling = ResamplingKind::bword;
  std::uint64_t seed = 42;
  // Per-cell params; epochs / window / dim / seed are overridden per cell and
  // min_count is resolved from the corpus size when auto_min_count is set.
  TrainParams train_base;
  bool auto_min_count = true;
  HalfEmbedding half_embedding = HalfEmbedding::pseudo_doc;
  int workers = 1;
  std::vector<std::string> amplifiers = default_amplifiers();
  std::vector<std::string> negations = default_negations();
  std::optional<std::filesystem::path> diff_dump_dir;  // per-cell diff export
};

struct CellRecord {
  std::size_t index = 0;
  int epochs = 0;
  int window = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;  // wall time, manifest only
};

struct Lex2SentResult {
  ClassifierVector classifier;     // per-document mean diff, original corpus order
  std::vector<CellRecord> cells;   // one per grid cell, in cell order
};

// Replaces the train-and-score step of one cell; used to test the grid
// machinery without paying for real training.
using CellScorer = std::function<std::vector<double>(
    const Corpus& training_corpus, int pos_id, int neg_id, const TrainParams& params)>;

// One full pass of the bagging algorithm: per grid cell, resample the corpus,
// stable-sort documents ascending by |count_score| of their resampled tokens,
// append the augmented lexicon halves as two pseudo-documents, train, compute
// the diff vector, and finally average over all cells. Cell seeds derive from
// (seed, cell index); a failed cell aborts the whole run.
Lex2SentResult run_lex2sent(const Corpus& corpus, const SentimentLexicon& lexicon,
                            const Lex2SentOptions& options);
Lex2SentResult run_lex2sent(const Corpus& corpus, const SentimentLexicon& lexicon,
                            const Lex2SentOptions& options, const CellScorer& scorer);

// Componentwise arithmetic mean; throws DataError on length mismatch.
std::vector<double> mean_diff(const std::vector<std::vector<double>>& cells);
std::vector<double> mean_diff(const std::vector<DiffVector>& cells);

// Empirical p-quantile: 1-based order statistic at index ceil(p * D), lower
// tie. Throws DataError unless 0 < p < 1 and x is nonempty.
double proportion_threshold(const std::vector<double>& x, double p);

// Higher score means positive: x > t -> positive, x < t -> negative, ties
// uniformly at random.
std::vector<Label> classify(const std::vector<double>& x, double t, Rng& rng);

// Rank-based proportion labeling: exactly ceil(p * D) documents receive the
// negative label; ties at the quantile boundary are resolved uniformly at
// random among the tied documents.
std::vector<Label> classify_proportion(const std::vector<double>& x, double p, Rng& rng);

}  // namespace lex2sent

#endif  // LEX2SENT_BAGGING_HPP_
