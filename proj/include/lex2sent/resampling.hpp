#ifndef LEX2SENT_RESAMPLING_HPP_
#define LEX2SENT_RESAMPLING_HPP_

#include <cstdint>
#include <string>

#include "lex2sent/corpus.hpp"
#include "lex2sent/lexicon.hpp"
#include "lex2sent/rng.hpp"

namespace lex2sent {

enum class ResamplingKind { none, bword, bwordpermutation, sorted_ablation };

ResamplingKind resampling_from_string(const std::string& name);
const char* to_string(ResamplingKind kind);

// Bootstrap draw: every output position is an independent uniform draw over
// the input positions; length is preserved.
TokenList bword(const TokenList& tokens, Rng& rng);

// Uniform random permutation of the tokens (Fisher-Yates); multiset and
// length are preserved.
TokenList bwordpermutation(const TokenList& tokens, Rng& rng);

// Ablation structure: non-sentiment tokens first in original order, then the
// lexicon-covered tokens ascending by |value| (stable).
TokenList sorted_ablation(const TokenList& tokens, const SentimentLexicon& lexicon);

// Resamples every document's embedding-path tokens independently, each with
// its own substream derived from (seed, document id); ids, labels and the
// baseline token view are untouched.
Corpus resample_corpus(const Corpus& corpus, ResamplingKind kind, std::uint64_t seed,
                       const SentimentLexicon* lexicon = nullptr);

}  // namespace lex2sent

#endif  // LEX2SENT_RESAMPLING_HPP_
