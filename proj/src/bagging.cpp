#include "lex2sent/bagging.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "lex2sent/errors.hpp"

namespace lex2sent {

namespace {

constexpr std::uint64_t kResampleStream = 0x7265736d70;  // per-cell resampling
constexpr std::uint64_t kTrainStream = 0x747261696e;     // per-cell model seed

struct Cell {
  std::size_t index;
  int epochs;
  int window;
  int dim;
  std::uint64_t seed;
};

std::vector<Cell> enumerate_cells(const GridSpec& grid, std::uint64_t master_seed) {
  std::vector<Cell> cells;
  cells.reserve(grid.cells());
  std::size_t index = 0;
  for (const int epochs : grid.epochs_set) {
    for (const int window : grid.windows_set) {
      for (const int dim : grid.dims_set) {
        cells.push_back({index, epochs, window, dim, mix_seed(master_seed, index)});
        ++index;
      }
    }
  }
  return cells;
}

std::vector<double> half_word_mean(const EmbeddingModel& model,
                                   const std::vector<std::string>& words) {
  std::vector<double> mean(static_cast<std::size_t>(model.params.dim_q), 0.0);
  std::size_t hits = 0;
  for (const auto& word : words) {
    if (const auto id = model.vocab.id_of(word)) {
      const auto row = model.word_vectors.row(static_cast<std::size_t>(*id));
      for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += row[i];
      ++hits;
    }
  }
  if (hits > 0) {
    for (auto& value : mean) value /= static_cast<double>(hits);
  }
  return mean;  // all-zero when no half word is in vocabulary (cos_dist falls back)
}

}  // namespace

void GridSpec::validate() const {
  if (epochs_set.empty() || windows_set.empty() || dims_set.empty()) {
    throw DataError("grid sets must all be nonempty");
  }
}

void ThresholdMode::validate() const {
  if (kind == ThresholdKind::proportion) {
    if (!p || !(*p > 0.0 && *p < 1.0)) {
      throw DataError("proportion threshold requires p in (0, 1)");
    }
  }
}

Lex2SentResult run_lex2sent(const Corpus& corpus, const SentimentLexicon& lexicon,
                            const Lex2SentOptions& options) {
  const CellScorer train_and_score =
      [&options](const Corpus& training, int pos_id, int neg_id,
                 const TrainParams& params) -> std::vector<double> {
    EmbeddingModel model = train(training, params);

    // The diff is evaluated on the resampled documents, i.e. everything
    // except the two pseudo-documents at the end of the training corpus.
    Corpus documents_only;
    documents_only.documents.assign(training.documents.begin(), training.documents.end() - 2);

    if (options.half_embedding == HalfEmbedding::pseudo_doc) {
      return diff_vector(model, documents_only, pos_id, neg_id).values;
    }

    // word_mean mode: halves are the mean of their trained word vectors.
    const auto& pos_tokens = training.documents[training.documents.size() - 2].tokens;
    const auto& neg_tokens = training.documents[training.documents.size() - 1].tokens;
    const std::vector<double> pos_half = half_word_mean(model, pos_tokens);
    const std::vector<double> neg_half = half_word_mean(model, neg_tokens);
    std::vector<double> values(documents_only.size(), 0.0);
    for (const auto& doc : documents_only.documents) {
      if (doc.empty_after_preprocess) continue;
      const auto vec = model.doc_vector(doc.id);
      values[static_cast<std::size_t>(doc.id)] =
          cos_dist(vec, neg_half) - cos_dist(vec, pos_half);
    }
    return values;
  };
  return run_lex2sent(corpus, lexicon, options, train_and_score);
}

Lex2SentResult run_lex2sent(const Corpus& corpus, const SentimentLexicon& lexicon,
                            const Lex2SentOptions& options, const CellScorer& scorer) {
  options.grid.validate();
  if (corpus.documents.empty()) throw DataError("cannot run on an empty corpus");
  const LexiconHalves augmented = augment_negations(halves(lexicon));

  const std::vector<Cell> cells = enumerate_cells(options.grid, options.seed);
  const int doc_count = static_cast<int>(corpus.size());

  std::vector<std::vector<double>> diffs(cells.size());
  std::vector<CellRecord> records(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());

  const auto run_cell = [&](const Cell& cell) {
    const auto started = std::chrono::steady_clock::now();

    Corpus resampled = resample_corpus(corpus, options.resampling,
                                       mix_seed(cell.seed, kResampleStream), &lexicon);

    // Training order: ascending |lexicon score| of the resampled tokens
    // (stable), then the two half pseudo-documents.
    std::vector<std::size_t> order(resampled.size());
    std::vector<double> magnitude(resampled.size());
    for (std::size_t i = 0; i < resampled.size(); ++i) {
      order[i] = i;
      magnitude[i] = std::abs(count_score(resampled.documents[i].tokens, lexicon,
                                          options.amplifiers, options.negations));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&magnitude](std::size_t a, std::size_t b) {
                       return magnitude[a] < magnitude[b];
                     });

    Corpus training;
    training.documents.reserve(resampled.size() + 2);
    for (const std::size_t i : order) training.documents.push_back(resampled.documents[i]);
    Document pos_doc;
    pos_doc.id = doc_count;
    pos_doc.tokens = augmented.positive;
    Document neg_doc;
    neg_doc.id = doc_count + 1;
    neg_doc.tokens = augmented.negative;
    training.documents.push_back(std::move(pos_doc));
    training.documents.push_back(std::move(neg_doc));

    TrainParams params = options.train_base;
    params.epochs = cell.epochs;
    params.max_window_K = cell.window;
    params.dim_q = cell.dim;
    params.seed = mix_seed(cell.seed, kTrainStream);
    if (options.auto_min_count) params.min_count = default_min_count(corpus.size());

    std::vector<double> values = scorer(training, doc_count, doc_count + 1, params);
    if (values.size() != corpus.size()) {
      throw NumericError("cell produced a diff vector of wrong length");
    }
    if (options.diff_dump_dir) {
      DiffVector dump;
      dump.values = values;
      dump.cell_id = std::to_string(cell.index);
      export_diff(dump, *options.diff_dump_dir /
                            ("cell_" + std::to_string(cell.index) + ".tsv"));
    }
    diffs[cell.index] = std::move(values);
    records[cell.index] = {cell.index, cell.epochs, cell.window, cell.dim, cell.seed,
                           std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                         started)
                               .count()};
  };

  const int workers =
      std::max(1, std::min(options.workers, static_cast<int>(cells.size())));
  if (workers == 1) {
    for (const auto& cell : cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
          try {
            run_cell(cells[i]);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& thread : pool) thread.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);  // abort, never skip a cell
    }
  }

  Lex2SentResult result;
  result.classifier.values = mean_diff(diffs);
  result.classifier.source = ClassifierSource::lex2sent;
  result.cells = std::move(records);
  return result;
}

std::vector<double> mean_diff(const std::vector<std::vector<double>>& cells) {
  if (cells.empty()) throw DataError("mean_diff needs at least one cell");
  const std::size_t length = cells.front().size();
  std::vector<double> mean(length, 0.0);
  for (const auto& cell : cells) {
    if (cell.size() != length) throw DataError("diff vectors differ in length");
    for (std::size_t i = 0; i < length; ++i) mean[i] += cell[i];
  }
  const double inv_b = 1.0 / static_cast<double>(cells.size());
  for (auto& value : mean) value *= inv_b;
  return mean;
}

std::vector<double> mean_diff(const std::vector<DiffVector>& cells) {
  std::vector<std::vector<double>> values;
  values.reserve(cells.size());
  for (const auto& cell : cells) values.push_back(cell.values);
  return mean_diff(values);
}

double proportion_threshold(const std::vector<double>& x, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DataError("quantile p must lie in (0, 1)");
  if (x.empty()) throw DataError("cannot take a quantile of an empty vector");
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(sorted.size())));  // 1-based
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

std::vector<Label> classify(const std::vector<double>& x, double t, Rng& rng) {
  std::vector<Label> labels;
  labels.reserve(x.size());
  for (const double value : x) {
    if (value > t) {
      labels.push_back(Label::positive);
    } else if (value < t) {
      labels.push_back(Label::negative);
    } else {
      labels.push_back(rng.uniform01() < 0.5 ? Label::positive : Label::negative);
    }
  }
  return labels;
}

std::vector<Label> classify_proportion(const std::vector<double>& x, double p, Rng& rng) {
  const double t = proportion_threshold(x, p);
  const auto quota = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(x.size())));  // negatives to assign

  std::vector<Label> labels(x.size(), Label::positive);
  std::vector<std::size_t> tied;
  std::size_t below = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < t) {
      labels[i] = Label::negative;
      ++below;
    } else if (x[i] == t) {
      tied.push_back(i);
    }
  }
  // Fill the remaining negative slots from the tied documents, uniformly.
  std::size_t remaining = quota > below ? quota - below : 0;
  for (std::size_t i = tied.size(); i > 1; --i) {
    std::swap(tied[i - 1], tied[rng.uniform_index(i)]);
  }
  for (std::size_t i = 0; i < tied.size() && i < remaining; ++i) {
    labels[tied[i]] = Label::negative;
  }
  return labels;
}

}  // namespace lex2sent
