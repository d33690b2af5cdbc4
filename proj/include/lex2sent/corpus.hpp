#ifndef LEX2SENT_CORPUS_HPP_
#define LEX2SENT_CORPUS_HPP_

#include <optional>
#include <string>
#include <vector>

namespace lex2sent {

enum class Label { positive, negative };

inline const char* to_string(Label l) {
  return l == Label::positive ? "positive" : "negative";
}

using TokenList = std::vector<std::string>;

// One text unit. Two token views are kept because the embedding path merges
// negations into the following word ("not bad" -> "negbad") while the
// counting baseline needs negations as separate tokens for its multiplier
// rule.
struct Document {
  int id = 0;                    // dense index within its corpus
  std::string raw;               // original text
  TokenList tokens;              // negation-merged view (embedding path)
  TokenList baseline_tokens;     // negations kept separate (counting path)
  std::optional<Label> gold_label;
  double lexicon_score = 0.0;    // filled by corpus_scores()
  bool empty_after_preprocess = false;

  std::size_t size() const { return tokens.size(); }
};

struct Corpus {
  std::vector<Document> documents;
  std::string name;
  double positive_fraction = 0.0;  // among gold-labeled documents

  std::size_t size() const { return documents.size(); }

  // Recomputes positive_fraction from the gold labels present.
  void refresh_positive_fraction() {
    std::size_t labeled = 0, positive = 0;
    for (const auto& d : documents) {
      if (d.gold_label) {
        ++labeled;
        if (*d.gold_label == Label::positive) ++positive;
      }
    }
    positive_fraction =
        labeled == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(labeled);
  }
};

}  // namespace lex2sent

#endif  // LEX2SENT_CORPUS_HPP_
