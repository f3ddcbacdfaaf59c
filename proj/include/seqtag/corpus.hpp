#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "seqtag/errors.hpp"
#include "seqtag/rng.hpp"

namespace seqtag {

// Which column of an annotated sentence an operation reads.
enum class Field { token, pos_label, ing_state };

inline const char* field_name(Field f) {
  switch (f) {
    case Field::token: return "token";
    case Field::pos_label: return "pos_label";
    default: return "ing_state";
  }
}

struct AnnotatedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> pos_labels;
  std::vector<std::string> ing_states;

  std::size_t size() const { return tokens.size(); }

  const std::vector<std::string>& field(Field f) const {
    switch (f) {
      case Field::token: return tokens;
      case Field::pos_label: return pos_labels;
      default: return ing_states;
    }
  }

  bool operator==(const AnnotatedSentence&) const = default;
};

struct ParseStats {
  std::size_t sentence_count = 0;
  std::size_t token_count = 0;
  std::size_t comment_lines = 0;

  bool operator==(const ParseStats&) const = default;
};

struct Corpus {
  std::vector<AnnotatedSentence> sentences;
  std::vector<std::string> pos_tagset;  // first-appearance order
  std::vector<std::string> state_set;   // first-appearance order
  std::string source;
  ParseStats stats;

  std::size_t token_count() const { return stats.token_count; }

  bool operator==(const Corpus&) const = default;
};

namespace detail {

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline void note_symbol(std::vector<std::string>& inventory, const std::string& symbol) {
  if (std::find(inventory.begin(), inventory.end(), symbol) == inventory.end())
    inventory.push_back(symbol);
}

// Validates sentence-internal constraints; `line_of` maps token position to
// the input line that produced it for error reporting.
template <typename LineOf>
inline void check_sentence(const AnnotatedSentence& s, LineOf line_of) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.ing_states[i] == "2") {
      if (i == 0)
        throw parse_error("continuation state 2 at sentence start", line_of(i));
      if (s.ing_states[i - 1] == "0")
        throw parse_error("continuation state 2 directly after state 0", line_of(i));
    }
  }
}

}  // namespace detail

// Rebuilds the tag/state inventories and stats from a sentence list. Used when
// deriving sub-corpora (e.g. cross-validation folds).
inline Corpus make_corpus(std::vector<AnnotatedSentence> sentences, std::string source = "<memory>") {
  Corpus c;
  c.sentences = std::move(sentences);
  c.source = std::move(source);
  c.stats.sentence_count = c.sentences.size();
  for (const auto& s : c.sentences) {
    c.stats.token_count += s.size();
    for (const auto& t : s.pos_labels) detail::note_symbol(c.pos_tagset, t);
    for (const auto& g : s.ing_states) detail::note_symbol(c.state_set, g);
  }
  return c;
}

// Parses the 3-column tab-separated corpus format: one `token<TAB>pos<TAB>state`
// line per token, blank line between sentences, `#` lines are comments.
inline Corpus parse_corpus(std::string_view text, std::string source = "<memory>") {
  Corpus c;
  c.source = std::move(source);

  AnnotatedSentence current;
  std::vector<std::size_t> current_lines;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (current.tokens.empty()) return;
    detail::check_sentence(current, [&](std::size_t i) { return current_lines[i]; });
    c.stats.token_count += current.size();
    for (const auto& t : current.pos_labels) detail::note_symbol(c.pos_tagset, t);
    for (const auto& g : current.ing_states) detail::note_symbol(c.state_set, g);
    c.sentences.push_back(std::move(current));
    current = {};
    current_lines.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;

    if (line.starts_with("#")) {
      ++c.stats.comment_lines;
    } else if (detail::is_blank(line)) {
      flush();
    } else {
      std::size_t t1 = line.find('\t');
      std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
      if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
          line.find('\t', t2 + 1) != std::string_view::npos)
        throw parse_error("expected 3 tab-separated fields", line_no);
      std::string token(line.substr(0, t1));
      std::string tag(line.substr(t1 + 1, t2 - t1 - 1));
      std::string state(line.substr(t2 + 1));
      if (token.empty()) throw parse_error("empty token field", line_no);
      if (tag.empty()) throw parse_error("empty pos_label field", line_no);
      if (state != "0" && state != "1" && state != "2" && state != "3")
        throw parse_error("ingredient state must be one of 0,1,2,3 (got \"" + state + "\")",
                          line_no);
      current.tokens.push_back(std::move(token));
      current.pos_labels.push_back(std::move(tag));
      current.ing_states.push_back(std::move(state));
      current_lines.push_back(line_no);
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  flush();

  if (c.sentences.empty()) throw parse_error("no sentences");
  c.stats.sentence_count = c.sentences.size();
  return c;
}

inline std::string write_corpus(const Corpus& c) {
  std::string out;
  for (std::size_t si = 0; si < c.sentences.size(); ++si) {
    const auto& s = c.sentences[si];
    for (std::size_t i = 0; i < s.size(); ++i) {
      out += s.tokens[i];
      out += '\t';
      out += s.pos_labels[i];
      out += '\t';
      out += s.ing_states[i];
      out += '\n';
    }
    if (si + 1 < c.sentences.size()) out += '\n';
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("error reading file: " + path);
  return ss.str();
}

inline Corpus load_corpus(const std::string& path) { return parse_corpus(read_file(path), path); }

// ---------------------------------------------------------------------------
// Fold plans

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> assignment;  // sentence index -> fold id

  std::vector<std::size_t> fold_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
      if (assignment[i] == fold) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> complement_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
      if (assignment[i] != fold) out.push_back(i);
    return out;
  }

  bool operator==(const FoldPlan&) const = default;
};

// Seeded shuffle of sentence indices followed by round-robin assignment.
// Deterministic for fixed (corpus size, k, seed); fold sizes differ by at most 1.
inline FoldPlan split_folds(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
  std::size_t n = corpus.sentences.size();
  if (k < 2) throw config_error("fold count must be at least 2");
  if (k > n)
    throw config_error("fold count " + std::to_string(k) + " exceeds sentence count " +
                       std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) plan.assignment[order[i]] = i % k;
  return plan;
}

// ---------------------------------------------------------------------------
// Summary statistics

struct CorpusStats {
  std::size_t sentence_count = 0;
  std::size_t token_count = 0;
  std::size_t lexicon_size = 0;
  std::size_t pos_tagset_size = 0;
  std::size_t state_set_size = 0;
  std::map<std::string, std::size_t> state_histogram;
  // Set when a reference lexicon was supplied.
  bool has_oov = false;
  std::size_t oov_count = 0;
  double oov_rate = 0.0;
};

// Reference vocabulary is any word list; OOV = tokens of `corpus` absent from it.
inline CorpusStats corpus_stats(const Corpus& corpus,
                                const std::vector<std::string>* reference_words = nullptr) {
  CorpusStats st;
  st.sentence_count = corpus.sentences.size();
  st.token_count = corpus.token_count();
  st.pos_tagset_size = corpus.pos_tagset.size();
  st.state_set_size = corpus.state_set.size();

  std::unordered_set<std::string> distinct;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) distinct.insert(t);
    for (const auto& g : s.ing_states) ++st.state_histogram[g];
  }
  st.lexicon_size = distinct.size();

  if (reference_words) {
    st.has_oov = true;
    std::unordered_set<std::string> known(reference_words->begin(), reference_words->end());
    for (const auto& s : corpus.sentences)
      for (const auto& t : s.tokens)
        if (!known.count(t)) ++st.oov_count;
    st.oov_rate = st.token_count ? static_cast<double>(st.oov_count) / st.token_count : 0.0;
  }
  return st;
}

}  // namespace seqtag
