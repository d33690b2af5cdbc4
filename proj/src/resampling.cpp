#include "lex2sent/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lex2sent/errors.hpp"

namespace lex2sent {

ResamplingKind resampling_from_string(const std::string& name) {
  if (name == "none") return ResamplingKind::none;
  if (name == "bword") return ResamplingKind::bword;
  if (name == "bwperm") return ResamplingKind::bwordpermutation;
  if (name == "sorted") return ResamplingKind::sorted_ablation;
  throw DataError("unknown resampling kind: " + name);
}

const char* to_string(ResamplingKind kind) {
  switch (kind) {
    case ResamplingKind::none:
      return "none";
    case ResamplingKind::bword:
      return "bword";
    case ResamplingKind::bwordpermutation:
      return "bwperm";
    case ResamplingKind::sorted_ablation:
      return "sorted";
  }
  return "?";
}

TokenList bword(const TokenList& tokens, Rng& rng) {
  TokenList out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.push_back(tokens[rng.uniform_index(tokens.size())]);
  }
  return out;
}

TokenList bwordpermutation(const TokenList& tokens, Rng& rng) {
  TokenList out = tokens;
  for (std::size_t i = out.size(); i > 1; --i) {
    std::swap(out[i - 1], out[rng.uniform_index(i)]);
  }
  return out;
}

TokenList sorted_ablation(const TokenList& tokens, const SentimentLexicon& lexicon) {
  TokenList out;
  out.reserve(tokens.size());
  std::vector<std::pair<double, std::size_t>> sentiment;  // (|value|, original position)
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto value = lexicon.value_of(tokens[i]);
    if (value) {
      sentiment.emplace_back(std::abs(*value), i);
    } else {
      out.push_back(tokens[i]);
    }
  }
  std::stable_sort(sentiment.begin(), sentiment.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [value, position] : sentiment) out.push_back(tokens[position]);
  return out;
}

Corpus resample_corpus(const Corpus& corpus, ResamplingKind kind, std::uint64_t seed,
                       const SentimentLexicon* lexicon) {
  if (kind == ResamplingKind::sorted_ablation && lexicon == nullptr) {
    throw DataError("sorted_ablation resampling needs a lexicon");
  }
  Corpus out = corpus;
  if (kind == ResamplingKind::none) return out;
  for (auto& doc : out.documents) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(doc.id)));
    switch (kind) {
      case ResamplingKind::bword:
        doc.tokens = bword(doc.tokens, rng);
        break;
      case ResamplingKind::bwordpermutation:
        doc.tokens = bwordpermutation(doc.tokens, rng);
        break;
      case ResamplingKind::sorted_ablation:
        doc.tokens = sorted_ablation(doc.tokens, *lexicon);
        break;
      case ResamplingKind::none:
        break;
    }
  }
  return out;
}

}  // namespace lex2sent
