#include "lex2sent/doc2vec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <tuple>

#include "lex2sent/errors.hpp"
#include "lex2sent/rng.hpp"

namespace lex2sent {

namespace {

// Substream tags for the model's independent random streams.
constexpr std::uint64_t kInitStream = 0x696e6974;   // vector initialization
constexpr std::uint64_t kTrainStream = 0x747261696e;  // window + subsample draws
constexpr std::uint64_t kEvalStream = 0x6576616c;   // likelihood window draws

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// ln sigmoid(x) without overflow for large |x|.
double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

void TrainParams::validate() const {
  if (dim_q < 1) throw DataError("embedding dimension must be >= 1");
  if (max_window_K < 1) throw DataError("maximum window size must be >= 1");
  if (epochs < 1) throw DataError("epochs must be >= 1");
  if (!(alpha_start > alpha_end && alpha_end > 0.0)) {
    throw DataError("learning rates must satisfy alpha_start > alpha_end > 0");
  }
  if (min_count < 1) throw DataError("min_count must be >= 1");
}

int default_min_count(std::size_t corpus_documents) { return corpus_documents < 2000 ? 1 : 5; }

Vocabulary Vocabulary::build(const Corpus& corpus, int min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  std::vector<std::string> order;  // first-occurrence order
  for (const auto& doc : corpus.documents) {
    for (const auto& token : doc.tokens) {
      auto [it, inserted] = counts.emplace(token, 0);
      if (inserted) order.push_back(token);
      ++it->second;
    }
  }
  std::vector<std::pair<std::string, std::int64_t>> ordered;
  ordered.reserve(order.size());
  for (const auto& word : order) ordered.emplace_back(word, counts[word]);
  return from_counts(ordered, min_count);
}

Vocabulary Vocabulary::from_counts(
    const std::vector<std::pair<std::string, std::int64_t>>& counts, int min_count) {
  Vocabulary vocab;
  vocab.min_count_ = min_count;
  for (const auto& [word, count] : counts) {
    if (count < min_count) continue;
    vocab.index_.emplace(word, static_cast<int>(vocab.words_.size()));
    vocab.words_.push_back({word, count, {}, {}});
    vocab.total_ += count;
  }
  if (vocab.words_.empty()) {
    throw DataError("empty vocabulary after min_count filtering");
  }
  return vocab;
}

std::optional<int> Vocabulary::id_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::build_huffman() {
  const std::size_t v = words_.size();
  if (v < 2) throw DataError("Huffman tree needs a vocabulary of at least 2 words");

  // Node ids: leaves 0..v-1 (insertion order), internal v..2v-2 (creation
  // order). The heap key (count, node id) is exactly the tie rule
  // (count, insertion order), so the tree is deterministic.
  const std::size_t total_nodes = 2 * v - 1;
  std::vector<std::int64_t> count(total_nodes, 0);
  std::vector<std::int32_t> parent(total_nodes, -1);
  std::vector<std::uint8_t> bit(total_nodes, 0);

  using HeapItem = std::pair<std::int64_t, std::size_t>;  // (count, node id)
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  for (std::size_t i = 0; i < v; ++i) {
    count[i] = words_[i].count;
    heap.emplace(count[i], i);
  }

  std::size_t next = v;
  while (heap.size() > 1) {
    const auto [count_a, a] = heap.top();
    heap.pop();
    const auto [count_b, b] = heap.top();
    heap.pop();
    parent[a] = static_cast<std::int32_t>(next);
    parent[b] = static_cast<std::int32_t>(next);
    bit[a] = 0;
    bit[b] = 1;
    count[next] = count_a + count_b;
    heap.emplace(count[next], next);
    ++next;
  }

  const auto root = static_cast<std::int32_t>(total_nodes - 1);
  for (std::size_t i = 0; i < v; ++i) {
    std::vector<std::uint8_t> code;
    std::vector<std::int32_t> path;
    for (std::int32_t node = static_cast<std::int32_t>(i); node != root;
         node = parent[node]) {
      code.push_back(bit[node]);
      path.push_back(parent[node] - static_cast<std::int32_t>(v));  // inner row id
    }
    std::reverse(code.begin(), code.end());
    std::reverse(path.begin(), path.end());
    words_[i].code = std::move(code);
    words_[i].path = std::move(path);
  }
}

std::span<const double> EmbeddingModel::doc_vector(int doc_id) const {
  if (doc_id < 0 || static_cast<std::size_t>(doc_id) >= doc_vectors.rows()) {
    throw DataError("unknown document id: " + std::to_string(doc_id));
  }
  return doc_vectors.row(static_cast<std::size_t>(doc_id));
}

double log_hs_probability(const EmbeddingModel& model, std::span<const double> context,
                          int target_id) {
  const auto& word = model.vocab.at(target_id);
  double sum = 0.0;
  for (std::size_t j = 0; j < word.path.size(); ++j) {
    const double x = dot(model.inner_vectors.row(static_cast<std::size_t>(word.path[j])),
                         context);
    sum += log_sigmoid(word.code[j] == 0 ? x : -x);
  }
  return sum;
}

double hs_probability(const EmbeddingModel& model, std::span<const double> context,
                      int target_id) {
  const auto& word = model.vocab.at(target_id);
  double product = 1.0;
  for (std::size_t j = 0; j < word.path.size(); ++j) {
    const double x = dot(model.inner_vectors.row(static_cast<std::size_t>(word.path[j])),
                         context);
    const double f = sigmoid(x);
    product *= word.code[j] == 0 ? f : 1.0 - f;
  }
  return product;
}

double hs_probability(const EmbeddingModel& model, std::span<const double> context,
                      std::string_view target_word) {
  const auto id = model.vocab.id_of(target_word);
  if (!id) throw DataError("word not in vocabulary: " + std::string(target_word));
  return hs_probability(model, context, *id);
}

HsGradients hs_loss_and_gradients(const EmbeddingModel& model, std::span<const double> context,
                                  int target_id) {
  const auto& word = model.vocab.at(target_id);
  HsGradients out;
  out.context_grad.assign(context.size(), 0.0);
  for (std::size_t j = 0; j < word.path.size(); ++j) {
    const auto inner = model.inner_vectors.row(static_cast<std::size_t>(word.path[j]));
    const double x = dot(inner, context);
    const double f = sigmoid(x);
    const double label = word.code[j] == 0 ? 1.0 : 0.0;
    out.loss += -log_sigmoid(word.code[j] == 0 ? x : -x);
    const double coef = f - label;  // dE/dx at this node
    std::vector<double> node_grad(context.size());
    for (std::size_t i = 0; i < context.size(); ++i) {
      out.context_grad[i] += coef * inner[i];
      node_grad[i] = coef * context[i];
    }
    out.inner_grads.emplace_back(word.path[j], std::move(node_grad));
  }
  return out;
}

namespace {

void check_dense_ids(const Corpus& corpus) {
  std::vector<char> seen(corpus.documents.size(), 0);
  for (const auto& doc : corpus.documents) {
    if (doc.id < 0 || static_cast<std::size_t>(doc.id) >= seen.size() || seen[doc.id]) {
      throw DataError("document ids must be unique and dense in 0..D-1");
    }
    seen[doc.id] = 1;
  }
}

// One SGD step for (document, context words, target). h and grad are scratch
// buffers of length q. Gradients are evaluated at the pre-update parameters:
// the inner-node contribution to grad is accumulated before the node moves.
void train_position(EmbeddingModel& m, int doc_row, const std::vector<int>& context,
                    int target, double alpha, std::vector<double>& h,
                    std::vector<double>& grad) {
  const std::size_t q = h.size();
  const auto doc = m.doc_vectors.row(static_cast<std::size_t>(doc_row));
  std::copy(doc.begin(), doc.end(), h.begin());
  for (const int w : context) {
    const auto v = m.word_vectors.row(static_cast<std::size_t>(w));
    for (std::size_t i = 0; i < q; ++i) h[i] += v[i];
  }
  const double inv_m = 1.0 / static_cast<double>(context.size() + 1);
  for (std::size_t i = 0; i < q; ++i) h[i] *= inv_m;

  std::fill(grad.begin(), grad.end(), 0.0);
  const auto& word = m.vocab.at(target);
  for (std::size_t j = 0; j < word.path.size(); ++j) {
    const auto inner = m.inner_vectors.row(static_cast<std::size_t>(word.path[j]));
    const double f = sigmoid(dot(inner, h));
    const double g = alpha * ((word.code[j] == 0 ? 1.0 : 0.0) - f);
    for (std::size_t i = 0; i < q; ++i) grad[i] += g * inner[i];
    for (std::size_t i = 0; i < q; ++i) inner[i] += g * h[i];
  }

  // CBOW-mean convention: every context element (and the document) takes the
  // full accumulated step, not grad / m. This keeps the update magnitude
  // independent of the sampled window size; the exact per-element gradient of
  // the loss is exposed separately by hs_loss_and_gradients().
  const auto doc_mut = m.doc_vectors.row(static_cast<std::size_t>(doc_row));
  for (std::size_t i = 0; i < q; ++i) doc_mut[i] += grad[i];
  for (const int w : context) {
    const auto v = m.word_vectors.row(static_cast<std::size_t>(w));
    for (std::size_t i = 0; i < q; ++i) v[i] += grad[i];
  }
}

std::vector<double> keep_probabilities(const Vocabulary& vocab, double threshold) {
  std::vector<double> keep(vocab.size(), 1.0);
  if (threshold <= 0.0) return keep;
  const double total = static_cast<double>(vocab.total_count());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const double f = static_cast<double>(vocab.at(static_cast<int>(i)).count) / total;
    if (f > threshold) {
      keep[i] = (std::sqrt(f / threshold) + 1.0) * threshold / f;
    }
  }
  return keep;
}

}  // namespace

EmbeddingModel init_model(const Corpus& corpus, const TrainParams& params) {
  params.validate();
  if (corpus.documents.empty()) throw DataError("cannot train on an empty corpus");
  check_dense_ids(corpus);

  EmbeddingModel model;
  model.params = params;
  model.vocab = Vocabulary::build(corpus, params.min_count);
  model.vocab.build_huffman();

  const auto q = static_cast<std::size_t>(params.dim_q);
  model.word_vectors = Matrix(model.vocab.size(), q);
  model.doc_vectors = Matrix(corpus.documents.size(), q);
  model.inner_vectors = Matrix(model.vocab.size() - 1, q);  // zeros

  Rng rng(mix_seed(params.seed, kInitStream));
  const double scale = 0.5 / static_cast<double>(params.dim_q);
  for (auto& value : model.word_vectors.data()) value = (2.0 * rng.uniform01() - 1.0) * scale;
  for (auto& value : model.doc_vectors.data()) value = (2.0 * rng.uniform01() - 1.0) * scale;
  return model;
}

void train_model(EmbeddingModel& model, const Corpus& corpus) {
  const TrainParams& params = model.params;
  const auto q = static_cast<std::size_t>(params.dim_q);

  // Linear decay is scheduled over every in-vocabulary position of every
  // epoch, counted before subsampling.
  std::int64_t positions_per_epoch = 0;
  for (const auto& doc : corpus.documents) {
    for (const auto& token : doc.tokens) {
      if (model.vocab.id_of(token)) ++positions_per_epoch;
    }
  }
  const double total_scheduled =
      static_cast<double>(positions_per_epoch) * static_cast<double>(params.epochs);
  const std::vector<double> keep = keep_probabilities(model.vocab, params.subsample_threshold);
  const bool subsample = params.subsample_threshold > 0.0;

  Rng rng(mix_seed(params.seed, kTrainStream));
  std::vector<double> h(q), grad(q);
  std::vector<int> kept, context;
  std::int64_t scanned = 0;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (const auto& doc : corpus.documents) {
      const double progress =
          total_scheduled > 0.0 ? static_cast<double>(scanned) / total_scheduled : 1.0;
      const double alpha =
          std::max(params.alpha_end,
                   params.alpha_start + (params.alpha_end - params.alpha_start) * progress);

      kept.clear();
      for (const auto& token : doc.tokens) {
        const auto id = model.vocab.id_of(token);
        if (!id) continue;  // out-of-vocabulary
        ++scanned;
        if (subsample && rng.uniform01() >= keep[static_cast<std::size_t>(*id)]) continue;
        kept.push_back(*id);
      }

      const int n = static_cast<int>(kept.size());
      for (int i = 0; i < n; ++i) {
        const int k = rng.uniform_int(1, params.max_window_K);
        const int lo = std::max(0, i - k);
        const int hi = std::min(n - 1, i + k);
        context.clear();
        for (int j = lo; j <= hi; ++j) {
          if (j != i) context.push_back(kept[static_cast<std::size_t>(j)]);
        }
        train_position(model, doc.id, context, kept[static_cast<std::size_t>(i)], alpha, h,
                       grad);
      }
    }
  }

  for (const double value : model.word_vectors.data()) {
    if (!std::isfinite(value)) throw NumericError("word vectors diverged during training");
  }
  for (const double value : model.doc_vectors.data()) {
    if (!std::isfinite(value)) throw NumericError("document vectors diverged during training");
  }
  for (const double value : model.inner_vectors.data()) {
    if (!std::isfinite(value)) throw NumericError("inner vectors diverged during training");
  }
}

EmbeddingModel train(const Corpus& corpus, const TrainParams& params) {
  EmbeddingModel model = init_model(corpus, params);
  train_model(model, corpus);
  return model;
}

double log_likelihood(const EmbeddingModel& model, const Corpus& corpus,
                      const LikelihoodOptions& options) {
  const auto q = static_cast<std::size_t>(model.params.dim_q);
  const int window = model.params.max_window_K;
  Rng rng(mix_seed(options.seed, kEvalStream));
  std::vector<double> h(q);
  std::vector<int> kept;

  double total = 0.0;
  for (const auto& doc : corpus.documents) {
    kept.clear();
    for (const auto& token : doc.tokens) {
      if (const auto id = model.vocab.id_of(token)) kept.push_back(*id);
    }
    const int n = static_cast<int>(kept.size());
    const int first = options.strict_edges ? window - 1 : 0;
    const int last = options.strict_edges ? n - window - 1 : n - 1;
    for (int i = first; i <= last; ++i) {
      const int k = rng.uniform_int(1, window);
      const int lo = std::max(0, i - k);
      const int hi = std::min(n - 1, i + k);
      const auto docv = model.doc_vector(doc.id);
      std::copy(docv.begin(), docv.end(), h.begin());
      int elements = 1;
      for (int j = lo; j <= hi; ++j) {
        if (j == i) continue;
        const auto v = model.word_vectors.row(static_cast<std::size_t>(kept[j]));
        for (std::size_t d = 0; d < q; ++d) h[d] += v[d];
        ++elements;
      }
      const double inv_m = 1.0 / static_cast<double>(elements);
      for (std::size_t d = 0; d < q; ++d) h[d] *= inv_m;
      total += log_hs_probability(model, h, kept[i]);
    }
  }
  return total;
}

namespace {

void write_matrix(std::ofstream& out, const Matrix& m) {
  char buffer[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", row[c]);
      out << buffer << (c + 1 == m.cols() ? '\n' : ' ');
    }
  }
}

void read_matrix(std::ifstream& in, Matrix& m) {
  for (auto& value : m.data()) {
    if (!(in >> value)) throw DataError("truncated model file: matrix data missing");
  }
}

}  // namespace

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file: " + path.string());
  out.precision(17);
  const auto& p = model.params;
  out << "lex2sent-embedding v1\n";
  out << model.vocab.size() << ' ' << model.doc_vectors.rows() << ' ' << p.dim_q << '\n';
  out << "params " << p.max_window_K << ' ' << p.epochs << ' ' << p.alpha_start << ' '
      << p.alpha_end << ' ' << p.min_count << ' ' << p.subsample_threshold << ' ' << p.seed
      << '\n';
  for (const auto& word : model.vocab.words()) out << word.word << ' ' << word.count << '\n';
  write_matrix(out, model.word_vectors);
  write_matrix(out, model.doc_vectors);
  write_matrix(out, model.inner_vectors);
  if (!out) throw IoError("failed while writing model file: " + path.string());
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path.string());
  std::string magic, version;
  in >> magic >> version;
  if (magic != "lex2sent-embedding" || version != "v1") {
    throw DataError("not a lex2sent model file: " + path.string());
  }
  std::size_t v = 0, d = 0;
  EmbeddingModel model;
  TrainParams p;
  std::string tag;
  if (!(in >> v >> d >> p.dim_q >> tag >> p.max_window_K >> p.epochs >> p.alpha_start >>
        p.alpha_end >> p.min_count >> p.subsample_threshold >> p.seed) ||
      tag != "params") {
    throw DataError("malformed model header: " + path.string());
  }

  // Codes are not stored: the Huffman tree is deterministic given the
  // (count, order) pairs, so it is rebuilt from the vocabulary dump.
  std::vector<std::pair<std::string, std::int64_t>> entries(v);
  for (auto& [word, count] : entries) {
    if (!(in >> word >> count)) throw DataError("truncated model vocabulary");
  }
  model.vocab = Vocabulary::from_counts(entries, 1);
  model.vocab.build_huffman();

  model.params = p;
  const auto q = static_cast<std::size_t>(p.dim_q);
  model.word_vectors = Matrix(v, q);
  model.doc_vectors = Matrix(d, q);
  model.inner_vectors = Matrix(v - 1, q);
  read_matrix(in, model.word_vectors);
  read_matrix(in, model.doc_vectors);
  read_matrix(in, model.inner_vectors);
  return model;
}

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write vocabulary file: " + path.string());
  for (const auto& word : vocab.words()) out << word.word << '\t' << word.count << '\n';
}

}  // namespace lex2sent
