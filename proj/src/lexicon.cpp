#include "lex2sent/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "lex2sent/errors.hpp"
#include "lex2sent/preprocess.hpp"

namespace lex2sent {

void SentimentLexicon::insert(const std::string& word, double value) {
  if (value == 0.0) throw DataError("lexicon entry '" + word + "' has value 0");
  auto it = index_.find(word);
  if (it != index_.end()) {
    entries_[it->second].second = value;
  } else {
    index_.emplace(word, entries_.size());
    entries_.emplace_back(word, value);
  }
  scale_ = std::max(scale_, std::abs(value));
}

std::optional<double> SentimentLexicon::value_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].second;
}

SentimentLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path.string());

  SentimentLexicon lexicon(path.stem().string());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::istringstream row(line);
    std::string word;
    double value = 0.0;
    if (!(row >> word >> value)) continue;  // malformed row

    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return c < 0x80 ? std::tolower(c) : c; });
    if (value == 0.0) {
      ++lexicon.rejected_zero_count;
      continue;
    }
    if (lexicon.contains(word)) ++lexicon.duplicate_count;
    lexicon.insert(word, value);
  }
  if (lexicon.empty()) throw DataError("no valid lexicon rows in " + path.string());
  return lexicon;
}

SentimentLexicon stemmed(const SentimentLexicon& lexicon) {
  SentimentLexicon out(lexicon.name());
  for (const auto& [word, value] : lexicon.entries()) {
    const std::string form = stem_word(word);
    if (out.contains(form)) ++out.duplicate_count;
    out.insert(form, value);
  }
  return out;
}

LexiconHalves halves(const SentimentLexicon& lexicon) {
  if (lexicon.empty()) throw DataError("cannot split an empty lexicon into halves");
  LexiconHalves out;
  for (const auto& [word, value] : lexicon.entries()) {
    (value > 0.0 ? out.positive : out.negative).push_back(word);
  }
  return out;
}

LexiconHalves augment_negations(const LexiconHalves& input) {
  LexiconHalves out = input;
  std::unordered_set<std::string> seen;
  seen.insert(out.positive.begin(), out.positive.end());
  seen.insert(out.negative.begin(), out.negative.end());

  const auto augment = [&seen](const std::vector<std::string>& sources,
                               std::vector<std::string>& target) {
    for (const auto& word : sources) {
      if (word.compare(0, 3, "neg") == 0) continue;  // never re-negate
      std::string form = "neg" + word;
      if (seen.insert(form).second) target.push_back(std::move(form));
    }
  };
  augment(input.negative, out.positive);
  augment(input.positive, out.negative);
  return out;
}

void export_halves(const LexiconHalves& halves, const std::filesystem::path& positive_path,
                   const std::filesystem::path& negative_path) {
  const auto write = [](const std::filesystem::path& path, const std::vector<std::string>& words) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write half word list: " + path.string());
    for (const auto& word : words) out << word << '\n';
  };
  write(positive_path, halves.positive);
  write(negative_path, halves.negative);
}

double count_score(const TokenList& tokens, const SentimentLexicon& lexicon,
                   const std::vector<std::string>& amplifiers,
                   const std::vector<std::string>& negations) {
  const std::unordered_set<std::string> amplifier_set(amplifiers.begin(), amplifiers.end());
  const std::unordered_set<std::string> negation_set(negations.begin(), negations.end());

  double score = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto value = lexicon.value_of(tokens[i]);
    if (!value) continue;
    double contribution = *value;
    if (i > 0) {
      if (amplifier_set.count(tokens[i - 1]) != 0) contribution *= 2.0;
      if (negation_set.count(tokens[i - 1]) != 0) contribution *= -0.5;
    }
    score += contribution;
  }
  return score;
}

std::vector<double> corpus_scores(Corpus& corpus, const SentimentLexicon& lexicon,
                                  const std::vector<std::string>& amplifiers,
                                  const std::vector<std::string>& negations, TokenView view) {
  std::vector<double> scores;
  scores.reserve(corpus.size());
  for (auto& doc : corpus.documents) {
    const TokenList& tokens = view == TokenView::baseline ? doc.baseline_tokens : doc.tokens;
    doc.lexicon_score = count_score(tokens, lexicon, amplifiers, negations);
    scores.push_back(doc.lexicon_score);
  }
  return scores;
}

}  // namespace lex2sent
