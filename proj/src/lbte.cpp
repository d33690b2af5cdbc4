#include "lex2sent/lbte.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "lex2sent/errors.hpp"

namespace lex2sent {

double cos_dist(std::span<const double> a, std::span<const double> b, int* zero_norm_flags) {
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    if (zero_norm_flags != nullptr) ++*zero_norm_flags;
    return 1.0;
  }
  return 1.0 - dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

DiffVector diff_vector(const EmbeddingModel& model, const Corpus& corpus, int pos_id,
                       int neg_id) {
  const auto pos_half = model.doc_vector(pos_id);  // throws on missing pseudo-doc
  const auto neg_half = model.doc_vector(neg_id);

  DiffVector out;
  out.values.assign(corpus.size(), 0.0);
  for (const auto& doc : corpus.documents) {
    if (doc.empty_after_preprocess) continue;  // stays at the neutral 0
    const auto vec = model.doc_vector(doc.id);
    const double to_neg = cos_dist(vec, neg_half, &out.zero_norm_count);
    const double to_pos = cos_dist(vec, pos_half, &out.zero_norm_count);
    out.values[static_cast<std::size_t>(doc.id)] = to_neg - to_pos;
  }
  return out;
}

void export_diff(const DiffVector& diff, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write diff file: " + path.string());
  char buffer[32];
  for (std::size_t d = 0; d < diff.values.size(); ++d) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", diff.values[d]);
    out << d << '\t' << buffer << '\n';
  }
}

}  // namespace lex2sent
