#ifndef LEX2SENT_DOC2VEC_HPP_
#define LEX2SENT_DOC2VEC_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lex2sent/corpus.hpp"

namespace lex2sent {

// Dense row-major matrix of doubles; the only linear algebra this model
// needs is dot products and axpy updates over rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct VocabWord {
  std::string word;
  std::int64_t count = 0;
  std::vector<std::uint8_t> code;  // Huffman bits, root to leaf
  std::vector<std::int32_t> path;  // inner-node ids, same length as code
};

// Frequency-filtered vocabulary plus the Huffman coding used by the
// hierarchical softmax. Word order is first-occurrence order, which makes
// the tree (ties broken by count, then insertion order) deterministic.
class Vocabulary {
 public:
  static Vocabulary build(const Corpus& corpus, int min_count);
  static Vocabulary from_counts(const std::vector<std::pair<std::string, std::int64_t>>& counts,
                                int min_count);

  // Fills codes and paths. Requires size() >= 2.
  void build_huffman();

  std::optional<int> id_of(std::string_view word) const;
  const VocabWord& at(int id) const { return words_[static_cast<std::size_t>(id)]; }
  const std::vector<VocabWord>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::int64_t total_count() const { return total_; }
  int min_count() const { return min_count_; }
  bool has_huffman() const { return !words_.empty() && !words_.front().code.empty(); }

 private:
  std::vector<VocabWord> words_;
  std::unordered_map<std::string, int> index_;
  std::int64_t total_ = 0;
  int min_count_ = 1;
};

struct TrainParams {
  int dim_q = 100;
  int max_window_K = 5;
  int epochs = 5;
  double alpha_start = 0.025;
  double alpha_end = 1e-4;
  int min_count = 5;
  double subsample_threshold = 1e-3;  // <= 0 disables frequent-word subsampling
  std::uint64_t seed = 1;

  void validate() const;  // throws DataError on inconsistent values
};

// Widely used default: 5, relaxed to 1 for small corpora where aggressive
// frequency filtering would empty the vocabulary.
int default_min_count(std::size_t corpus_documents);

// Distributed-memory paragraph vectors: the document vector joins every
// context window as an extra element. doc_vectors rows are indexed by
// document id (ids must be dense across the training corpus).
struct EmbeddingModel {
  Matrix word_vectors;   // |V| x q
  Matrix doc_vectors;    // D x q
  Matrix inner_vectors;  // (|V|-1) x q, Huffman tree nodes
  TrainParams params;
  Vocabulary vocab;

  std::span<const double> doc_vector(int doc_id) const;  // throws DataError on unknown id
};

// p(target | context vector) from the sigmoid decisions along the target's
// root-to-leaf path; in (0, 1) and sums to 1 over the vocabulary.
double hs_probability(const EmbeddingModel& model, std::span<const double> context,
                      int target_id);
double hs_probability(const EmbeddingModel& model, std::span<const double> context,
                      std::string_view target_word);
double log_hs_probability(const EmbeddingModel& model, std::span<const double> context,
                          int target_id);

// Loss -ln p(target | h) with exact analytic gradients, used by the trainer
// and checked against finite differences in the tests. context_grad is dE/dh;
// a context element built as h = (sum of m vectors) / m receives
// context_grad / m.
struct HsGradients {
  double loss = 0.0;
  std::vector<double> context_grad;
  std::vector<std::pair<int, std::vector<double>>> inner_grads;  // (node id, dE/dnode)
};
HsGradients hs_loss_and_gradients(const EmbeddingModel& model, std::span<const double> context,
                                  int target_id);

// Builds vocabulary + Huffman tree and initializes vectors: words and
// documents uniform in [-0.5/q, 0.5/q], inner nodes zero (so the model's
// probabilities are exactly 2^-codelen before any update).
EmbeddingModel init_model(const Corpus& corpus, const TrainParams& params);

// Runs the SGD epochs on an initialized model. Single-threaded by contract:
// a fixed seed reproduces the model bit for bit.
void train_model(EmbeddingModel& model, const Corpus& corpus);

EmbeddingModel train(const Corpus& corpus, const TrainParams& params);

struct LikelihoodOptions {
  std::uint64_t seed = 0;
  // When set, only positions with a full window on both sides are summed
  // (documents shorter than 2K contribute nothing).
  bool strict_edges = false;
};

// Corpus log-likelihood under freshly sampled windows fixed by the seed.
// Evaluation only; no updates.
double log_likelihood(const EmbeddingModel& model, const Corpus& corpus,
                      const LikelihoodOptions& options = {});

// Plain-text versioned dump (header with |V|, D, q; row-major matrices) and
// its inverse. Huffman codes are rebuilt from the stored counts.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel load_model(const std::filesystem::path& path);
void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);

}  // namespace lex2sent

#endif  // LEX2SENT_DOC2VEC_HPP_
