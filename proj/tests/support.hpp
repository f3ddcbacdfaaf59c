#pragma once

// Shared helpers for the test suites: deterministic random corpora and decode
// requests used by the property tests and the oracle-equivalence checks.

#include <string>
#include <vector>

#include "seqtag/corpus.hpp"
#include "seqtag/decode.hpp"
#include "seqtag/lexicon.hpp"
#include "seqtag/rng.hpp"

namespace testsupport {

using seqtag::AnnotatedSentence;
using seqtag::Corpus;
using seqtag::DecodeRequest;
using seqtag::Rng;

// Words over a tiny alphabet so prefixes collide; a few single-character and
// multibyte words keep the prefix rule honest.
inline std::string random_word(Rng& rng, std::size_t id) {
  static const std::vector<std::string> heads = {"a", "b", "ش", "م"};
  static const std::vector<std::string> tails = {"x", "y", "ر", "q"};
  std::string w = heads[rng.below(heads.size())];
  if (rng.below(5) == 0) return w;  // single scalar value
  w += tails[rng.below(tails.size())];
  w += std::to_string(id);  // distinctness
  return w;
}

struct RandomCorpusSpec {
  std::size_t n_states = 4;  // from {0,1,2,3}
  std::size_t n_tags = 5;
  std::size_t vocab = 12;
  std::size_t sentences = 8;
  std::size_t max_len = 6;
};

// Ingredient states respect the corpus rule: 2 only ever follows 1, 2 or 3.
inline std::string next_state(Rng& rng, const std::string& prev, std::size_t n_states) {
  static const std::vector<std::string> all = {"0", "1", "2", "3"};
  for (;;) {
    const std::string& s = all[rng.below(n_states)];
    if (s == "2" && (prev.empty() || prev == "0")) continue;
    return s;
  }
}

inline Corpus random_corpus(Rng& rng, const RandomCorpusSpec& spec = {}) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < spec.vocab; ++i) words.push_back(random_word(rng, i));
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < spec.n_tags; ++i) tags.push_back(std::string(1, char('A' + i)));

  std::vector<AnnotatedSentence> sents;
  for (std::size_t s = 0; s < spec.sentences; ++s) {
    AnnotatedSentence sent;
    std::size_t len = 1 + rng.below(spec.max_len);
    std::string prev;
    for (std::size_t i = 0; i < len; ++i) {
      sent.tokens.push_back(words[rng.below(words.size())]);
      sent.pos_labels.push_back(tags[rng.below(tags.size())]);
      prev = next_state(rng, prev, spec.n_states);
      sent.ing_states.push_back(prev);
    }
    sents.push_back(std::move(sent));
  }
  // Force full inventories so requested dimensions are met: one sentence per
  // tag cycling through the states (1 before 2 keeps the corpus valid).
  {
    AnnotatedSentence sent;
    static const std::vector<std::string> order = {"0", "1", "2", "3"};
    for (std::size_t i = 0; i < spec.n_tags || i < spec.n_states; ++i) {
      sent.tokens.push_back(words[rng.below(words.size())]);
      sent.pos_labels.push_back(tags[i % spec.n_tags]);
      sent.ing_states.push_back(i < spec.n_states ? order[(i + 1) % spec.n_states] : "0");
    }
    if (spec.n_states == 1) sent.ing_states.assign(sent.ing_states.size(), "0");
    sents.push_back(std::move(sent));
  }
  return seqtag::make_corpus(std::move(sents));
}

// Sentence mixing known words, unseen words sharing a known prefix, and fully
// novel words.
inline std::vector<std::string> random_sentence(Rng& rng, const seqtag::Lexicon& lex,
                                                std::size_t max_len, bool allow_oov) {
  std::size_t len = 1 + rng.below(max_len);
  std::vector<std::string> obs(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t kind = allow_oov ? rng.below(4) : 0;
    if (kind < 2) {
      obs[i] = lex.words[rng.below(lex.size())];
    } else if (kind == 2) {
      obs[i] = lex.prefixes[rng.below(lex.prefixes.size())] + "zz" + std::to_string(rng.below(9));
    } else {
      obs[i] = "نnovel" + std::to_string(rng.below(9));
    }
  }
  return obs;
}

inline DecodeRequest random_request(Rng& rng, std::vector<std::string> obs) {
  DecodeRequest req;
  req.observations = std::move(obs);
  req.lambda = rng.below(2) == 0 ? 1.0 : 4.0;
  req.space = rng.below(2) == 0 ? seqtag::Space::probability : seqtag::Space::log_space;
  req.lambda_on_oov = rng.below(4) == 0;
  return req;
}

inline std::vector<std::string> random_tags(Rng& rng, const std::vector<std::string>& tagset,
                                            std::size_t len) {
  std::vector<std::string> tags(len);
  for (std::size_t i = 0; i < len; ++i) tags[i] = tagset[rng.below(tagset.size())];
  return tags;
}

}  // namespace testsupport
