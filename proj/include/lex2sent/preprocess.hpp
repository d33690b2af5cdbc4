#ifndef LEX2SENT_PREPROCESS_HPP_
#define LEX2SENT_PREPROCESS_HPP_

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lex2sent/corpus.hpp"

namespace lex2sent {

// Knobs for the preprocessing pipeline. protected_words shields sentiment
// words, amplifiers and negations from stopword removal; callers add the
// lexicon's words via protect_lexicon_words() before preprocessing.
struct PreprocessConfig {
  std::unordered_set<std::string> stopword_list;
  std::vector<std::string> negation_list;
  std::vector<std::string> amplifier_list;
  std::unordered_set<std::string> protected_words;
  bool stemming_enabled = true;

  // Standard English stopwords, the ten default negations and the four
  // default amplifiers; protected_words preloaded with negations + amplifiers.
  static PreprocessConfig defaults();

  void protect_lexicon_words(const std::vector<std::string>& words);
};

// Built-in word lists (also shipped under data/ for inspection).
const std::vector<std::string>& default_stopwords();
const std::vector<std::string>& default_negations();  // 10 entries
const std::vector<std::string>& default_amplifiers();  // 4 entries

// Lowercase word tokens split on non-letter boundaries. Angle-bracket markup
// spans are dropped first, punctuation-only and numeric-only pieces never
// become tokens. Bytes >= 0x80 are treated as letters so UTF-8 words survive.
TokenList tokenize(std::string_view raw);

// Replaces every negation token followed by a word w with the single token
// "neg" + w. Chains resolve left to right with single-token consumption; a
// dangling negation at end of input is dropped.
TokenList merge_negations(const TokenList& tokens, const std::vector<std::string>& negations);

// Drops stopwords unless protected or "neg"-prefixed.
TokenList remove_stopwords(const TokenList& tokens, const PreprocessConfig& config);

// Suffix-stripping normalization: plural -s/-es, -ing, -ed, minimum stem
// length 3, applied to a fixpoint (hence idempotent).
std::string stem_word(const std::string& word);
TokenList stem(const TokenList& tokens);

// Embedding-path view: stem(remove_stopwords(merge_negations(tokenize(raw)))).
TokenList preprocess(std::string_view raw, const PreprocessConfig& config);

// Counting-baseline view: same pipeline minus negation merging.
TokenList preprocess_baseline(std::string_view raw, const PreprocessConfig& config);

// Fills both token views and the empty flag for every document in place.
void preprocess_corpus(Corpus& corpus, const PreprocessConfig& config);

}  // namespace lex2sent

#endif  // LEX2SENT_PREPROCESS_HPP_
