#include "lex2sent/preprocess.hpp"

#include <algorithm>
#include <cctype>

namespace lex2sent {

namespace {

bool is_letter(unsigned char c) {
  // Bytes >= 0x80 belong to UTF-8 multibyte sequences; keep them in tokens.
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool looks_like_tag_start(std::string_view raw, std::size_t i) {
  if (raw[i] != '<' || i + 1 >= raw.size()) return false;
  const unsigned char next = static_cast<unsigned char>(raw[i + 1]);
  return next == '/' || (next >= 'a' && next <= 'z') || (next >= 'A' && next <= 'Z');
}

}  // namespace

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "i",       "me",      "my",      "myself",  "we",       "our",     "ours",
      "ourselves", "you",   "your",    "yours",   "yourself", "yourselves",
      "he",      "him",     "his",     "himself", "she",      "her",     "hers",
      "herself", "it",      "its",     "itself",  "they",     "them",    "their",
      "theirs",  "themselves", "what", "which",   "who",      "whom",    "this",
      "that",    "these",   "those",   "am",      "is",       "are",     "was",
      "were",    "be",      "been",    "being",   "have",     "has",     "had",
      "having",  "do",      "does",    "did",     "doing",    "a",       "an",
      "the",     "and",     "but",     "if",      "or",       "because", "as",
      "until",   "while",   "of",      "at",      "by",       "for",     "with",
      "about",   "against", "between", "into",    "through",  "during",  "before",
      "after",   "above",   "below",   "to",      "from",     "up",      "down",
      "in",      "out",     "on",      "off",     "over",     "under",   "again",
      "further", "then",    "once",    "here",    "there",    "when",    "where",
      "why",     "how",     "all",     "any",     "both",     "each",    "few",
      "more",    "most",    "other",   "some",    "such",     "no",      "nor",
      "not",     "only",    "own",     "same",    "so",       "than",    "too",
      "very",    "s",       "t",       "can",     "will",     "just",    "don",
      "should",  "now",     "d",       "ll",      "m",        "o",       "re",
      "ve",      "y",       "ain",     "aren",    "couldn",   "didn",    "doesn",
      "hadn",    "hasn",    "haven",   "isn",     "ma",       "mightn",  "mustn",
      "needn",   "shan",    "shouldn", "wasn",    "weren",    "won",     "wouldn",
      "would",   "could",   "might",   "must",    "shall",    "ought",   "also",
      "one",     "two",     "many",    "much",    "still",    "yet",     "ever",
      "even",    "however", "therefore", "thus",  "hence",    "upon",    "via",
      "per",     "since",   "although", "though", "whether",  "within",  "among"};
  return words;
}

const std::vector<std::string>& default_negations() {
  static const std::vector<std::string> words = {"not",     "no",     "never",  "cannot",
                                                 "neither", "nor",    "without", "hardly",
                                                 "barely",  "n't"};
  return words;
}

const std::vector<std::string>& default_amplifiers() {
  static const std::vector<std::string> words = {"very", "really", "extremely", "absolutely"};
  return words;
}

PreprocessConfig PreprocessConfig::defaults() {
  PreprocessConfig config;
  const auto& stops = default_stopwords();
  config.stopword_list.insert(stops.begin(), stops.end());
  config.negation_list = default_negations();
  config.amplifier_list = default_amplifiers();
  config.protected_words.insert(config.negation_list.begin(), config.negation_list.end());
  config.protected_words.insert(config.amplifier_list.begin(), config.amplifier_list.end());
  return config;
}

void PreprocessConfig::protect_lexicon_words(const std::vector<std::string>& words) {
  protected_words.insert(words.begin(), words.end());
}

TokenList tokenize(std::string_view raw) {
  TokenList out;
  std::string current;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (looks_like_tag_start(raw, i)) {
      if (!current.empty()) {
        out.push_back(current);
        current.clear();
      }
      const auto close = raw.find('>', i + 1);
      i = close == std::string_view::npos ? raw.size() : close + 1;
      continue;
    }
    const unsigned char c = static_cast<unsigned char>(raw[i]);
    if (is_letter(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : raw[i]);
    } else if (!current.empty()) {
      out.push_back(current);
      current.clear();
    }
    ++i;
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

TokenList merge_negations(const TokenList& tokens, const std::vector<std::string>& negations) {
  const std::unordered_set<std::string> negation_set(negations.begin(), negations.end());
  TokenList out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (negation_set.count(tokens[i]) != 0) {
      if (i + 1 < tokens.size()) {
        out.push_back("neg" + tokens[i + 1]);
        i += 2;
      } else {
        ++i;  // dangling negation at end of document
      }
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

TokenList remove_stopwords(const TokenList& tokens, const PreprocessConfig& config) {
  TokenList out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (config.stopword_list.count(token) != 0 && config.protected_words.count(token) == 0 &&
        token.compare(0, 3, "neg") != 0) {
      continue;
    }
    out.push_back(token);
  }
  return out;
}

namespace {

// Applies at most one suffix rule; returns true when a rule fired.
bool strip_once(std::string& w) {
  const std::size_t n = w.size();
  if (n >= 6 && w.ends_with("ing")) {
    w.erase(n - 3);
    return true;
  }
  if (n >= 5 && w.ends_with("ed")) {
    w.erase(n - 2);
    return true;
  }
  if (n >= 5 && w.ends_with("es")) {
    const char before = w[n - 3];
    const bool plural_context = before == 's' || before == 'x' || before == 'z' ||
                                (n >= 6 && (w.compare(n - 4, 2, "ch") == 0 ||
                                            w.compare(n - 4, 2, "sh") == 0));
    if (plural_context) {
      w.erase(n - 2);
      return true;
    }
  }
  if (n >= 4 && w.back() == 's' && !w.ends_with("ss")) {
    w.pop_back();
    return true;
  }
  return false;
}

}  // namespace

std::string stem_word(const std::string& word) {
  std::string w = word;
  while (strip_once(w)) {
  }
  return w;
}

TokenList stem(const TokenList& tokens) {
  TokenList out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(stem_word(token));
  return out;
}

TokenList preprocess(std::string_view raw, const PreprocessConfig& config) {
  TokenList tokens = merge_negations(tokenize(raw), config.negation_list);
  tokens = remove_stopwords(tokens, config);
  return config.stemming_enabled ? stem(tokens) : tokens;
}

TokenList preprocess_baseline(std::string_view raw, const PreprocessConfig& config) {
  TokenList tokens = remove_stopwords(tokenize(raw), config);
  return config.stemming_enabled ? stem(tokens) : tokens;
}

void preprocess_corpus(Corpus& corpus, const PreprocessConfig& config) {
  for (auto& doc : corpus.documents) {
    doc.tokens = preprocess(doc.raw, config);
    doc.baseline_tokens = preprocess_baseline(doc.raw, config);
    doc.empty_after_preprocess = doc.tokens.empty();
  }
}

}  // namespace lex2sent
