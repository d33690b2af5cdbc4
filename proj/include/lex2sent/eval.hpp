#ifndef LEX2SENT_EVAL_HPP_
#define LEX2SENT_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lex2sent/bagging.hpp"
#include "lex2sent/corpus.hpp"
#include "lex2sent/lexicon.hpp"

namespace lex2sent {

enum class Method { lex2sent, counting };

Method method_from_string(const std::string& name);
const char* to_string(Method method);

struct RunConfig {
  Method method = Method::lex2sent;
  Lex2SentOptions lex2sent;  // grid, resampling, training knobs
  ThresholdMode threshold;
  int runs = 1;
  std::uint64_t master_seed = 42;
  std::optional<double> subsample_fraction;  // per-run subcorpus when present
  int workers = 1;                           // global budget across runs and cells

  void validate() const;
};

struct EvalReport {
  std::vector<double> per_run_rates;
  std::vector<long> per_run_positive_counts;
  double mean_rate = 0.0;
  double min_rate = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max_rate = 0.0;
  long positive_label_count = 0;  // mean positive labels per run, rounded
  std::string config_echo;
};

// Fraction of exact matches; throws DataError on length mismatch.
double classification_rate(const std::vector<Label>& labels, const std::vector<Label>& gold);

// Seed of the r-th run under a master seed; multi_run uses exactly this
// derivation, so `run_seed(master, 0)` reproduces its first execution.
std::uint64_t run_seed(std::uint64_t master_seed, int run_index);

struct SingleRun {
  std::vector<double> scores;   // classifier values, corpus order
  std::vector<Label> labels;
  double threshold = 0.0;
  double rate = 0.0;            // NaN when the corpus has no complete gold labels
  long positive_count = 0;
  std::vector<CellRecord> cells;  // empty for the counting method
  std::vector<int> source_ids;    // original ids when subsampled
};

// One scored-and-classified execution with every random stream derived from
// run_seed. In proportion mode without an explicit p, the true negative
// fraction of the (sub)corpus is used.
SingleRun execute_run(const Corpus& corpus, const SentimentLexicon& lexicon,
                      const RunConfig& config, std::uint64_t run_seed);

// R independent executions with seeds derived from the master seed, run in
// parallel under the worker budget.
EvalReport multi_run(const Corpus& corpus, const SentimentLexicon& lexicon,
                     const RunConfig& config);

// Aggregation-only variant for tests: rates come from the callback.
using RunFn = std::function<double(int run_index, std::uint64_t run_seed)>;
EvalReport multi_run_with(const RunConfig& config, const RunFn& runner);

struct SubsampleResult {
  Corpus corpus;
  std::vector<int> source_ids;  // original id per kept document
};

// floor(fraction * D) documents drawn without replacement; document order is
// preserved and ids re-densified.
SubsampleResult subsample(const Corpus& corpus, double fraction, Rng& rng);

// TSV export (doc_id, text, predicted label) usable as a training set for a
// downstream supervised model. Tabs and newlines in the text are flattened.
void export_labels(const Corpus& corpus, const std::vector<Label>& labels,
                   const std::filesystem::path& path);

struct MethodComparison {
  struct Row {
    Method method;
    EvalReport fixed;       // fixed-0 threshold
    EvalReport proportion;  // oracle proportion threshold
  };
  std::vector<Row> rows;  // sorted descending by fixed-threshold mean rate
};

MethodComparison compare_methods(const Corpus& corpus, const SentimentLexicon& lexicon,
                                 const RunConfig& config, const std::vector<Method>& methods);
std::string format_comparison(const MethodComparison& comparison);

}  // namespace lex2sent

#endif  // LEX2SENT_EVAL_HPP_
