#include "lex2sent/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "lex2sent/errors.hpp"

namespace lex2sent {

namespace {

constexpr std::uint64_t kRunStream = 0x72756e;        // per-run master
constexpr std::uint64_t kSubsampleStream = 0x737562;  // subsample draws
constexpr std::uint64_t kMethodStream = 0x6d7468;     // lex2sent cell seeds
constexpr std::uint64_t kTieStream = 0x746965;        // threshold tie breaks

// Linear-interpolation quantile over sorted values.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted.front();
  const double position = q * static_cast<double>(sorted.size() - 1);
  const auto lower = static_cast<std::size_t>(position);
  const auto upper = std::min(lower + 1, sorted.size() - 1);
  const double fraction = position - static_cast<double>(lower);
  return sorted[lower] + fraction * (sorted[upper] - sorted[lower]);
}

std::vector<Label> gold_labels(const Corpus& corpus) {
  std::vector<Label> gold;
  gold.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    if (!doc.gold_label) {
      throw DataError("evaluation needs gold labels on every document");
    }
    gold.push_back(*doc.gold_label);
  }
  return gold;
}

}  // namespace

Method method_from_string(const std::string& name) {
  if (name == "lex2sent") return Method::lex2sent;
  if (name == "counting") return Method::counting;
  throw DataError("unknown method: " + name);
}

const char* to_string(Method method) {
  return method == Method::lex2sent ? "lex2sent" : "counting";
}

std::uint64_t run_seed(std::uint64_t master_seed, int run_index) {
  return mix_seed(mix_seed(master_seed, kRunStream), static_cast<std::uint64_t>(run_index));
}

void RunConfig::validate() const {
  if (runs < 1) throw DataError("runs must be >= 1");
  if (subsample_fraction && !(*subsample_fraction > 0.0 && *subsample_fraction <= 1.0)) {
    throw DataError("subsample fraction must lie in (0, 1]");
  }
  lex2sent.grid.validate();
  if (threshold.kind == ThresholdKind::proportion && threshold.p) {
    ThresholdMode resolved = threshold;
    resolved.validate();
  }
}

double classification_rate(const std::vector<Label>& labels, const std::vector<Label>& gold) {
  if (labels.size() != gold.size()) {
    throw DataError("label and gold vectors differ in length");
  }
  if (labels.empty()) return 0.0;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == gold[i]) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(labels.size());
}

SingleRun execute_run(const Corpus& corpus, const SentimentLexicon& lexicon,
                      const RunConfig& config, std::uint64_t run_seed) {
  SingleRun out;

  const Corpus* active = &corpus;
  Corpus sampled;
  if (config.subsample_fraction && *config.subsample_fraction < 1.0) {
    Rng rng(mix_seed(run_seed, kSubsampleStream));
    SubsampleResult sub = subsample(corpus, *config.subsample_fraction, rng);
    sampled = std::move(sub.corpus);
    out.source_ids = std::move(sub.source_ids);
    active = &sampled;
  }

  if (config.method == Method::lex2sent) {
    Lex2SentOptions options = config.lex2sent;
    options.seed = mix_seed(run_seed, kMethodStream);
    Lex2SentResult result = run_lex2sent(*active, lexicon, options);
    out.scores = std::move(result.classifier.values);
    out.cells = std::move(result.cells);
  } else {
    Corpus scored = *active;  // counting writes per-document scores
    out.scores = corpus_scores(scored, lexicon, config.lex2sent.amplifiers,
                               config.lex2sent.negations, TokenView::baseline);
  }

  Rng tie_rng(mix_seed(run_seed, kTieStream));
  if (config.threshold.kind == ThresholdKind::fixed_zero) {
    out.threshold = 0.0;
    out.labels = classify(out.scores, 0.0, tie_rng);
  } else {
    const double p = config.threshold.p ? *config.threshold.p
                                        : 1.0 - active->positive_fraction;
    if (!(p > 0.0 && p < 1.0)) {
      throw DataError("proportion threshold needs p in (0, 1); corpus gives " +
                      std::to_string(p));
    }
    out.threshold = proportion_threshold(out.scores, p);
    out.labels = classify_proportion(out.scores, p, tie_rng);
  }

  out.positive_count = static_cast<long>(
      std::count(out.labels.begin(), out.labels.end(), Label::positive));

  bool has_gold = true;
  for (const auto& doc : active->documents) {
    if (!doc.gold_label) {
      has_gold = false;
      break;
    }
  }
  out.rate = has_gold ? classification_rate(out.labels, gold_labels(*active))
                      : std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

EvalReport aggregate(const RunConfig& config, std::vector<double> rates,
                     std::vector<long> positives) {
  EvalReport report;
  report.per_run_rates = std::move(rates);
  report.per_run_positive_counts = std::move(positives);

  std::vector<double> sorted = report.per_run_rates;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (const double rate : sorted) sum += rate;
  report.mean_rate = sum / static_cast<double>(sorted.size());
  report.min_rate = sorted.front();
  report.max_rate = sorted.back();
  report.q1 = quantile_sorted(sorted, 0.25);
  report.median = quantile_sorted(sorted, 0.5);
  report.q3 = quantile_sorted(sorted, 0.75);

  if (!report.per_run_positive_counts.empty()) {
    double positive_sum = 0.0;
    for (const long count : report.per_run_positive_counts) {
      positive_sum += static_cast<double>(count);
    }
    report.positive_label_count = std::lround(
        positive_sum / static_cast<double>(report.per_run_positive_counts.size()));
  }

  std::ostringstream echo;
  echo << "method=" << to_string(config.method)
       << " threshold=" << (config.threshold.kind == ThresholdKind::fixed_zero ? "zero"
                                                                               : "proportion")
       << " resampling=" << to_string(config.lex2sent.resampling)
       << " grid=" << config.lex2sent.grid.epochs_set.size() << 'x'
       << config.lex2sent.grid.windows_set.size() << 'x'
       << config.lex2sent.grid.dims_set.size() << " runs=" << config.runs
       << " seed=" << config.master_seed;
  if (config.subsample_fraction) echo << " subsample=" << *config.subsample_fraction;
  report.config_echo = echo.str();
  return report;
}

}  // namespace

EvalReport multi_run(const Corpus& corpus, const SentimentLexicon& lexicon,
                     const RunConfig& config) {
  config.validate();

  std::vector<double> rates(static_cast<std::size_t>(config.runs));
  std::vector<long> positives(static_cast<std::size_t>(config.runs));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(config.runs));

  // Runs execute in parallel; the cell-level parallelism inside each run is
  // scaled down so the total stays within the worker budget.
  const int concurrent_runs =
      std::max(1, std::min(config.workers, config.runs));
  RunConfig per_run = config;
  per_run.lex2sent.workers = std::max(1, config.workers / concurrent_runs);

  const auto one_run = [&](int r) {
    const SingleRun run = execute_run(corpus, lexicon, per_run, run_seed(config.master_seed, r));
    if (std::isnan(run.rate)) {
      throw DataError("multi_run needs gold labels to compute rates");
    }
    rates[static_cast<std::size_t>(r)] = run.rate;
    positives[static_cast<std::size_t>(r)] = run.positive_count;
  };

  if (concurrent_runs == 1) {
    for (int r = 0; r < config.runs; ++r) one_run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < concurrent_runs; ++w) {
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < config.runs; r = next.fetch_add(1)) {
          try {
            one_run(r);
          } catch (...) {
            failures[static_cast<std::size_t>(r)] = std::current_exception();
          }
        }
      });
    }
    for (auto& thread : pool) thread.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  return aggregate(config, std::move(rates), std::move(positives));
}

EvalReport multi_run_with(const RunConfig& config, const RunFn& runner) {
  config.validate();
  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(config.runs));
  for (int r = 0; r < config.runs; ++r) {
    rates.push_back(runner(r, run_seed(config.master_seed, r)));
  }
  return aggregate(config, std::move(rates), {});
}

SubsampleResult subsample(const Corpus& corpus, double fraction, Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DataError("subsample fraction must lie in (0, 1]");
  }
  const auto keep = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(corpus.size())));

  std::vector<std::size_t> indices(corpus.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  // Partial Fisher-Yates: the first `keep` slots are a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < keep && i + 1 < indices.size(); ++i) {
    std::swap(indices[i], indices[i + rng.uniform_index(indices.size() - i)]);
  }
  indices.resize(keep);
  std::sort(indices.begin(), indices.end());  // keep corpus order

  SubsampleResult result;
  result.corpus.name = corpus.name;
  for (const std::size_t i : indices) {
    Document doc = corpus.documents[i];
    result.source_ids.push_back(doc.id);
    doc.id = static_cast<int>(result.corpus.documents.size());
    result.corpus.documents.push_back(std::move(doc));
  }
  result.corpus.refresh_positive_fraction();
  return result;
}

void export_labels(const Corpus& corpus, const std::vector<Label>& labels,
                   const std::filesystem::path& path) {
  if (labels.size() != corpus.size()) {
    throw DataError("labels are not aligned with the corpus");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write label file: " + path.string());
  out << "doc_id\ttext\tlabel\n";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::string text = corpus.documents[i].raw;
    for (auto& c : text) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    out << corpus.documents[i].id << '\t' << text << '\t' << to_string(labels[i]) << '\n';
  }
  if (!out) throw IoError("failed while writing label file: " + path.string());
}

MethodComparison compare_methods(const Corpus& corpus, const SentimentLexicon& lexicon,
                                 const RunConfig& config, const std::vector<Method>& methods) {
  if (methods.size() < 2) throw DataError("compare needs at least two methods");

  MethodComparison comparison;
  for (const Method method : methods) {
    RunConfig method_config = config;
    method_config.method = method;
    method_config.threshold = {ThresholdKind::fixed_zero, std::nullopt};
    EvalReport fixed = multi_run(corpus, lexicon, method_config);
    method_config.threshold = {ThresholdKind::proportion, config.threshold.p};
    EvalReport proportion = multi_run(corpus, lexicon, method_config);
    comparison.rows.push_back({method, std::move(fixed), std::move(proportion)});
  }
  std::stable_sort(comparison.rows.begin(), comparison.rows.end(),
                   [](const auto& a, const auto& b) {
                     return a.fixed.mean_rate > b.fixed.mean_rate;
                   });
  return comparison;
}

std::string format_comparison(const MethodComparison& comparison) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %12s %12s %12s %12s\n", "method", "mean@0",
                "median@0", "mean@prop", "median@prop");
  out << line;
  for (const auto& row : comparison.rows) {
    std::snprintf(line, sizeof(line), "%-10s %11.2f%% %11.2f%% %11.2f%% %11.2f%%\n",
                  to_string(row.method), 100.0 * row.fixed.mean_rate,
                  100.0 * row.fixed.median, 100.0 * row.proportion.mean_rate,
                  100.0 * row.proportion.median);
    out << line;
  }
  return out.str();
}

}  // namespace lex2sent
