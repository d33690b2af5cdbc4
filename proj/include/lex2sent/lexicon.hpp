#ifndef LEX2SENT_LEXICON_HPP_
#define LEX2SENT_LEXICON_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lex2sent/corpus.hpp"

namespace lex2sent {

// Word -> value map over [-s, s]. Neutral (zero-valued) words are absent by
// construction. Entry order is preserved from insertion so every derived
// artifact (halves, pseudo-documents, exports) is deterministic.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  explicit SentimentLexicon(std::string name) : name_(std::move(name)) {}

  // Inserts or overwrites (last value wins). Rejects value == 0.
  void insert(const std::string& word, double value);

  std::optional<double> value_of(std::string_view word) const;
  bool contains(std::string_view word) const { return value_of(word).has_value(); }

  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double scale() const { return scale_; }
  const std::string& name() const { return name_; }

  int duplicate_count = 0;      // rows that overwrote an earlier word on load
  int rejected_zero_count = 0;  // zero-valued rows dropped on load

 private:
  std::vector<std::pair<std::string, double>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  double scale_ = 0.0;
  std::string name_;
};

// Unique word lists per sentiment pole; order follows the lexicon's entry
// order, with augmented neg-forms appended after the originals.
struct LexiconHalves {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
};

// Parses UTF-8 rows "word<TAB>value" (any whitespace run accepted as the
// delimiter); lines starting with # are ignored. Words are lowercased to
// match the tokenizer's output. Throws IoError when unreadable, DataError
// when no valid rows remain.
SentimentLexicon load_lexicon(const std::filesystem::path& path);

// Copy of the lexicon with every word passed through stem_word(), so lexicon
// forms line up with a stemmed corpus. Collisions keep the last value.
SentimentLexicon stemmed(const SentimentLexicon& lexicon);

// Splits into the positive (value > 0) and negative (value < 0) halves.
// Throws DataError on an empty lexicon.
LexiconHalves halves(const SentimentLexicon& lexicon);

// For each word w in one half, appends "neg" + w to the opposite half.
// Words already starting with "neg" are never augmentation sources and a
// form is only added when it appears in neither half, which makes the
// operation idempotent.
LexiconHalves augment_negations(const LexiconHalves& input);

void export_halves(const LexiconHalves& halves, const std::filesystem::path& positive_path,
                   const std::filesystem::path& negative_path);

// Counting-baseline score: sum of lexicon values over the tokens, doubled
// when the previous token is an amplifier and multiplied by -0.5 when it is
// a negation (adjacency window of one). Higher means more positive.
double count_score(const TokenList& tokens, const SentimentLexicon& lexicon,
                   const std::vector<std::string>& amplifiers,
                   const std::vector<std::string>& negations);

enum class TokenView { merged, baseline };

// Scores every document and stores the result in Document::lexicon_score.
// The baseline view feeds the counting classifier; the merged view is the
// sort key for the resampled training order.
std::vector<double> corpus_scores(Corpus& corpus, const SentimentLexicon& lexicon,
                                  const std::vector<std::string>& amplifiers,
                                  const std::vector<std::string>& negations,
                                  TokenView view = TokenView::baseline);

}  // namespace lex2sent

#endif  // LEX2SENT_LEXICON_HPP_
