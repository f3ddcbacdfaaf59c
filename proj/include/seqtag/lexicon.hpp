#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seqtag/corpus.hpp"
#include "seqtag/errors.hpp"
#include "seqtag/utf8.hpp"

namespace seqtag {

// Prefix key of a token: its first two Unicode scalar values, or the single
// scalar value for one-character tokens.
inline std::string extract_prefix(std::string_view token) {
  if (token.empty()) throw config_error("cannot take the prefix of an empty token");
  return std::string(token.substr(0, utf8::prefix_bytes(token, 2)));
}

// Vocabulary with dense indices in first-appearance order, plus the prefix key
// of every word. The prefix inventory is likewise ordered by first appearance.
struct Lexicon {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> word_index;
  std::vector<std::string> prefixes;
  std::unordered_map<std::string, std::size_t> prefix_index;
  std::vector<std::size_t> word_prefix;  // word id -> prefix id

  std::size_t size() const { return words.size(); }

  // -1 if absent.
  long index_of(const std::string& w) const {
    auto it = word_index.find(w);
    return it == word_index.end() ? -1 : static_cast<long>(it->second);
  }

  long prefix_id_of(const std::string& prefix) const {
    auto it = prefix_index.find(prefix);
    return it == prefix_index.end() ? -1 : static_cast<long>(it->second);
  }

  void add(const std::string& w) {
    if (word_index.count(w)) return;
    word_index.emplace(w, words.size());
    words.push_back(w);
    std::string p = extract_prefix(w);
    auto it = prefix_index.find(p);
    if (it == prefix_index.end()) {
      it = prefix_index.emplace(p, prefixes.size()).first;
      prefixes.push_back(p);
    }
    word_prefix.push_back(it->second);
  }

  bool operator==(const Lexicon&) const = default;
};

inline Lexicon build_lexicon(const Corpus& corpus, Field field = Field::token) {
  if (corpus.sentences.empty()) throw config_error("cannot build a lexicon from an empty corpus");
  Lexicon lex;
  for (const auto& s : corpus.sentences)
    for (const auto& w : s.field(field)) lex.add(w);
  return lex;
}

}  // namespace seqtag
