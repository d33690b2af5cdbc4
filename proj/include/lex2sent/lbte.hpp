#ifndef LEX2SENT_LBTE_HPP_
#define LEX2SENT_LBTE_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lex2sent/corpus.hpp"
#include "lex2sent/doc2vec.hpp"

namespace lex2sent {

// 1 - <a,b> / (|a| |b|), in [0, 2]. A zero-norm input falls back to distance
// 1 (the neutral point) instead of failing; callers can count those cases.
double cos_dist(std::span<const double> a, std::span<const double> b,
                int* zero_norm_flags = nullptr);

// Per-document diff_d = cos_dist(doc, negative half) - cos_dist(doc,
// positive half) for one grid cell; larger means more positive.
struct DiffVector {
  std::vector<double> values;
  std::string cell_id;
  int zero_norm_count = 0;  // documents that hit the cos_dist fallback
};

// pos_id / neg_id are the pseudo-document ids of the lexicon halves inside
// this model. values[d] is indexed by the documents' ids. Documents flagged
// empty after preprocessing get diff 0 (their vectors never trained).
DiffVector diff_vector(const EmbeddingModel& model, const Corpus& corpus, int pos_id,
                       int neg_id);

// Debug export: rows "doc_id<TAB>diff".
void export_diff(const DiffVector& diff, const std::filesystem::path& path);

}  // namespace lex2sent

#endif  // LEX2SENT_LBTE_HPP_
