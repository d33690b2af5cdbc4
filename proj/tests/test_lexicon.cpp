#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lex2sent/errors.hpp"
#include "lex2sent/lexicon.hpp"
#include "lex2sent/preprocess.hpp"
#include "lex2sent/rng.hpp"

using namespace lex2sent;

namespace {

SentimentLexicon toy_lexicon() {
  SentimentLexicon lexicon("toy");
  lexicon.insert("good", 3.0);
  lexicon.insert("great", 1.0);
  lexicon.insert("bad", -2.0);
  lexicon.insert("awful", -3.0);
  return lexicon;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

// Independent scorer: exhaustive scan applying the x2 / x-0.5 rules.
double brute_force_score(const TokenList& tokens, const SentimentLexicon& lexicon,
                         const std::vector<std::string>& amplifiers,
                         const std::vector<std::string>& negations) {
  double total = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto value = lexicon.value_of(tokens[i]);
    if (!value) continue;
    double v = *value;
    if (i > 0) {
      for (const auto& amp : amplifiers) {
        if (tokens[i - 1] == amp) v = v * 2.0;
      }
      for (const auto& neg : negations) {
        if (tokens[i - 1] == neg) v = v * -0.5;
      }
    }
    total += v;
  }
  return total;
}

}  // namespace

TEST_CASE("load_lexicon parses rows, rejects zeros, keeps last duplicate") {
  const auto path = write_temp("lex2sent_test_lexicon.tsv",
                               "# comment\n"
                               "good\t3\n"
                               "table\t0\n"
                               "bad\t-2\n"
                               "bad\t-3\n"
                               "UPPER\t1\n");
  const SentimentLexicon lexicon = load_lexicon(path);
  CHECK(lexicon.size() == 3);
  CHECK(lexicon.value_of("good") == 3.0);
  CHECK(lexicon.value_of("bad") == -3.0);
  CHECK(lexicon.value_of("upper") == 1.0);  // lowercased on load
  CHECK_FALSE(lexicon.contains("table"));
  CHECK(lexicon.duplicate_count == 1);
  CHECK(lexicon.rejected_zero_count == 1);
  CHECK(lexicon.scale() == 3.0);
}

TEST_CASE("load_lexicon error paths") {
  CHECK_THROWS_AS(load_lexicon("/nonexistent/lexicon.tsv"), IoError);
  const auto path = write_temp("lex2sent_empty_lexicon.tsv", "# nothing\nzero\t0\n");
  CHECK_THROWS_AS(load_lexicon(path), DataError);
}

TEST_CASE("halves splits by sign and loses no entries") {
  const SentimentLexicon lexicon = toy_lexicon();
  const LexiconHalves h = halves(lexicon);
  CHECK(h.positive == std::vector<std::string>{"good", "great"});
  CHECK(h.negative == std::vector<std::string>{"bad", "awful"});
  CHECK(h.positive.size() + h.negative.size() == lexicon.size());

  SentimentLexicon only_positive("pos");
  only_positive.insert("good", 3.0);
  only_positive.insert("great", 1.0);
  const LexiconHalves hp = halves(only_positive);
  CHECK(hp.positive.size() == 2);
  CHECK(hp.negative.empty());

  CHECK_THROWS_AS(halves(SentimentLexicon{}), DataError);
}

TEST_CASE("augment_negations crosses the halves and is idempotent") {
  const LexiconHalves h = halves(toy_lexicon());
  const LexiconHalves augmented = augment_negations(h);
  CHECK(augmented.positive == std::vector<std::string>{"good", "great", "negbad", "negawful"});
  CHECK(augmented.negative == std::vector<std::string>{"bad", "awful", "neggood", "neggreat"});

  const LexiconHalves twice = augment_negations(augmented);
  CHECK(twice.positive == augmented.positive);
  CHECK(twice.negative == augmented.negative);

  CHECK(augment_negations(LexiconHalves{}).positive.empty());
  CHECK(augment_negations(LexiconHalves{}).negative.empty());
}

TEST_CASE("augmented halves never share a surface string") {
  SentimentLexicon lexicon("overlap");
  lexicon.insert("good", 2.0);
  lexicon.insert("neggood", 1.5);  // explicit entry colliding with an augmentation target
  const LexiconHalves augmented = augment_negations(halves(lexicon));
  for (const auto& word : augmented.positive) {
    CHECK(std::find(augmented.negative.begin(), augmented.negative.end(), word) ==
          augmented.negative.end());
  }
}

TEST_CASE("count_score applies amplifier and negation multipliers") {
  const SentimentLexicon lexicon = toy_lexicon();
  const auto& amplifiers = default_amplifiers();
  const auto& negations = default_negations();
  CHECK(count_score({"very", "good"}, lexicon, amplifiers, negations) == 6.0);
  CHECK(count_score({"not", "good"}, lexicon, amplifiers, negations) == -1.5);
  CHECK(count_score({"table", "chair"}, lexicon, amplifiers, negations) == 0.0);
  CHECK(count_score({"good", "bad"}, lexicon, amplifiers, negations) == 1.0);
}

TEST_CASE("count_score matches the brute-force oracle on random token lists") {
  const SentimentLexicon lexicon = toy_lexicon();
  const auto& amplifiers = default_amplifiers();
  const auto& negations = default_negations();
  const std::vector<std::string> pool = {"good", "bad",  "great", "awful", "very",
                                         "not",  "film", "the",   "never", "really"};
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    TokenList tokens;
    const std::size_t n = rng.uniform_index(15);
    for (std::size_t i = 0; i < n; ++i) tokens.push_back(pool[rng.uniform_index(pool.size())]);
    CHECK(count_score(tokens, lexicon, amplifiers, negations) ==
          brute_force_score(tokens, lexicon, amplifiers, negations));
  }
}

TEST_CASE("count_score is additive across a neutral junction") {
  const SentimentLexicon lexicon = toy_lexicon();
  const auto& amplifiers = default_amplifiers();
  const auto& negations = default_negations();
  const TokenList left = {"very", "good", "film"};
  const TokenList right = {"not", "bad", "ending"};
  TokenList joined = left;
  joined.push_back("junction");
  joined.insert(joined.end(), right.begin(), right.end());
  CHECK(count_score(joined, lexicon, amplifiers, negations) ==
        count_score(left, lexicon, amplifiers, negations) +
            count_score(right, lexicon, amplifiers, negations));
}

TEST_CASE("negating a sentiment token flips sign and halves magnitude") {
  const SentimentLexicon lexicon = toy_lexicon();
  const auto& amplifiers = default_amplifiers();
  const auto& negations = default_negations();
  for (const std::string word : {"good", "bad", "great", "awful"}) {
    const double plain = count_score({word}, lexicon, amplifiers, negations);
    const double negated = count_score({"not", word}, lexicon, amplifiers, negations);
    CHECK(negated == -0.5 * plain);
  }
}

TEST_CASE("corpus_scores stores per-document values in corpus order") {
  Corpus corpus;
  corpus.documents.resize(3);
  corpus.documents[0].id = 0;
  corpus.documents[0].baseline_tokens = {"good"};
  corpus.documents[1].id = 1;
  corpus.documents[1].baseline_tokens = {"bad", "awful"};
  corpus.documents[2].id = 2;
  corpus.documents[2].baseline_tokens = {};
  const auto scores = corpus_scores(corpus, toy_lexicon(), default_amplifiers(),
                                    default_negations(), TokenView::baseline);
  CHECK(scores == std::vector<double>{3.0, -5.0, 0.0});
  CHECK(corpus.documents[1].lexicon_score == -5.0);
}

TEST_CASE("stemmed lexicon aligns inflected entries") {
  SentimentLexicon lexicon("inflected");
  lexicon.insert("amazing", 2.0);
  lexicon.insert("movies", 1.0);
  const SentimentLexicon s = stemmed(lexicon);
  CHECK(s.contains(stem_word("amazing")));
  CHECK(s.contains("movie"));
  CHECK(s.size() == 2);
}

TEST_CASE("export_halves writes one word per line") {
  const LexiconHalves augmented = augment_negations(halves(toy_lexicon()));
  const auto pos_path = std::filesystem::temp_directory_path() / "lex2sent_pos.txt";
  const auto neg_path = std::filesystem::temp_directory_path() / "lex2sent_neg.txt";
  export_halves(augmented, pos_path, neg_path);
  std::ifstream in(pos_path);
  std::string word;
  std::vector<std::string> words;
  while (std::getline(in, word)) words.push_back(word);
  CHECK(words == augmented.positive);
}
