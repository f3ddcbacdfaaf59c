#pragma once

#include <string>
#include <vector>

#include "seqtag/corpus.hpp"
#include "seqtag/errors.hpp"
#include "seqtag/model.hpp"

namespace seqtag {

namespace detail {

inline const std::vector<std::string>& inventory_for(const Corpus& corpus, Field f) {
  switch (f) {
    case Field::pos_label: return corpus.pos_tagset;
    case Field::ing_state: return corpus.state_set;
    default: throw config_error("tokens cannot be the hidden state field");
  }
}

// count / total with optional additive smoothing. With epsilon == 0 an
// unobserved context row stays exactly all-zero.
inline double ratio(std::int64_t count, std::int64_t total, double epsilon, std::size_t cells) {
  if (epsilon > 0.0)
    return (static_cast<double>(count) + epsilon) /
           (static_cast<double>(total) + epsilon * static_cast<double>(cells));
  return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
}

inline void check_training_corpus(const Corpus& corpus) {
  if (corpus.sentences.empty()) throw config_error("cannot estimate a model from an empty corpus");
}

}  // namespace detail

// C[context, p] = sum of B[context, w] over words w whose prefix key is p.
inline PrefixTable<Grid2<double>> build_prefix_table(const Grid2<double>& emission,
                                                     const Lexicon& lexicon) {
  PrefixTable<Grid2<double>> pt;
  pt.prefixes = lexicon.prefixes;
  pt.table = Grid2<double>(emission.rows(), lexicon.prefixes.size());
  for (std::size_t r = 0; r < emission.rows(); ++r)
    for (std::size_t w = 0; w < emission.cols(); ++w)
      pt.table(r, lexicon.word_prefix[w]) += emission(r, w);
  return pt;
}

inline PrefixTable<Grid3<double>> build_prefix_table(const Grid3<double>& emission,
                                                     const Lexicon& lexicon) {
  PrefixTable<Grid3<double>> pt;
  pt.prefixes = lexicon.prefixes;
  pt.table = Grid3<double>(emission.dim0(), emission.dim1(), lexicon.prefixes.size());
  for (std::size_t i = 0; i < emission.dim0(); ++i)
    for (std::size_t j = 0; j < emission.dim1(); ++j)
      for (std::size_t w = 0; w < emission.dim2(); ++w)
        pt.table(i, j, lexicon.word_prefix[w]) += emission(i, j, w);
  return pt;
}

// Relative-frequency estimation of pi, bigram transitions and per-state
// emissions. obs_field/state_field select the observation and hidden symbol
// columns; the usual combinations are token->pos_label (POS tagger),
// token->ing_state and pos_label->ing_state.
inline FirstOrderModel estimate_first_order(const Corpus& corpus, Field obs_field,
                                            Field state_field, double epsilon = 0.0) {
  detail::check_training_corpus(corpus);
  if (obs_field == state_field) throw config_error("observation and state fields must differ");

  FirstOrderModel m;
  m.state_set = detail::inventory_for(corpus, state_field);
  m.lexicon = build_lexicon(corpus, obs_field);

  const std::size_t n = m.state_set.size();
  const std::size_t v = m.lexicon.size();
  m.sentence_count = static_cast<std::int64_t>(corpus.sentences.size());
  m.pi_count.assign(n, 0);
  m.trans_count = Grid2<std::int64_t>(n, n);
  m.emit_count = Grid2<std::int64_t>(n, v);

  for (const auto& s : corpus.sentences) {
    const auto& obs = s.field(obs_field);
    const auto& st = s.field(state_field);
    std::size_t prev = 0;
    for (std::size_t r = 0; r < s.size(); ++r) {
      std::size_t cur = static_cast<std::size_t>(m.state_index(st[r]));
      std::size_t w = static_cast<std::size_t>(m.lexicon.index_of(obs[r]));
      m.emit_count(cur, w) += 1;
      if (r == 0)
        m.pi_count[cur] += 1;
      else
        m.trans_count(prev, cur) += 1;
      prev = cur;
    }
  }

  m.pi.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    m.pi[j] = detail::ratio(m.pi_count[j], m.sentence_count, epsilon, n);

  m.trans = Grid2<double>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t total = m.trans_count.row_sum(i);
    for (std::size_t j = 0; j < n; ++j)
      m.trans(i, j) = detail::ratio(m.trans_count(i, j), total, epsilon, n);
  }

  m.emit = Grid2<double>(n, v);
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t total = m.emit_count.row_sum(j);
    for (std::size_t w = 0; w < v; ++w)
      m.emit(j, w) = detail::ratio(m.emit_count(j, w), total, epsilon, v);
  }

  m.prefix_emit = build_prefix_table(m.emit, m.lexicon);
  return m;
}

// Trigram transition and pair-conditioned emission counts. Sentences shorter
// than 3 tokens contribute pi and whatever pair counts exist; the position-1/2
// decode tables (emit1, trans2) are marginals of those counts.
inline SecondOrderModel estimate_second_order(const Corpus& corpus, Field obs_field,
                                              Field state_field, double epsilon = 0.0) {
  detail::check_training_corpus(corpus);
  if (obs_field == state_field) throw config_error("observation and state fields must differ");

  SecondOrderModel m;
  m.state_set = detail::inventory_for(corpus, state_field);
  m.lexicon = build_lexicon(corpus, obs_field);

  const std::size_t n = m.state_set.size();
  const std::size_t v = m.lexicon.size();
  m.sentence_count = static_cast<std::int64_t>(corpus.sentences.size());
  m.pi_count.assign(n, 0);
  m.trans3_count = Grid3<std::int64_t>(n, n, n);
  m.emit2_count = Grid3<std::int64_t>(n, n, v);

  for (const auto& s : corpus.sentences) {
    const auto& obs = s.field(obs_field);
    const auto& st = s.field(state_field);
    std::vector<std::size_t> idx(s.size());
    for (std::size_t r = 0; r < s.size(); ++r)
      idx[r] = static_cast<std::size_t>(m.state_index(st[r]));
    m.pi_count[idx[0]] += 1;
    for (std::size_t r = 1; r < s.size(); ++r) {
      std::size_t w = static_cast<std::size_t>(m.lexicon.index_of(obs[r]));
      m.emit2_count(idx[r - 1], idx[r], w) += 1;
      if (r >= 2) m.trans3_count(idx[r - 2], idx[r - 1], idx[r]) += 1;
    }
  }

  m.pi.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    m.pi[j] = detail::ratio(m.pi_count[j], m.sentence_count, epsilon, n);

  m.trans3 = Grid3<double>(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t total = m.trans3_count.row_sum(i, j);
      for (std::size_t k = 0; k < n; ++k)
        m.trans3(i, j, k) = detail::ratio(m.trans3_count(i, j, k), total, epsilon, n);
    }

  m.emit2 = Grid3<double>(n, n, v);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t total = m.emit2_count.row_sum(i, j);
      for (std::size_t w = 0; w < v; ++w)
        m.emit2(i, j, w) = detail::ratio(m.emit2_count(i, j, w), total, epsilon, v);
    }

  // Position-1 emission: predecessor axis of the emit2 counts summed out.
  m.emit1 = Grid2<double>(n, v);
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += m.emit2_count.row_sum(i, j);
    for (std::size_t w = 0; w < v; ++w) {
      std::int64_t cnt = 0;
      for (std::size_t i = 0; i < n; ++i) cnt += m.emit2_count(i, j, w);
      m.emit1(j, w) = detail::ratio(cnt, total, epsilon, v);
    }
  }

  // Position-2 transition: first axis of the trigram counts summed out.
  m.trans2 = Grid2<double>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += m.trans3_count.row_sum(i, j);
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t cnt = 0;
      for (std::size_t i = 0; i < n; ++i) cnt += m.trans3_count(i, j, k);
      m.trans2(j, k) = detail::ratio(cnt, total, epsilon, n);
    }
  }

  m.prefix_emit2 = build_prefix_table(m.emit2, m.lexicon);
  m.prefix_emit1 = build_prefix_table(m.emit1, m.lexicon);
  return m;
}

// Trigram-shaped tables conditioned on the POS column: transitions counted
// over (tag at r-1, state at r-1, state at r), emissions over (tag at r,
// state at r, word at r).
inline FeatureConditionedModel estimate_feature_conditioned(const Corpus& corpus,
                                                            double epsilon = 0.0) {
  detail::check_training_corpus(corpus);

  FeatureConditionedModel m;
  m.state_set = corpus.state_set;
  m.feature_tagset = corpus.pos_tagset;
  m.lexicon = build_lexicon(corpus, Field::token);

  const std::size_t n = m.state_set.size();
  const std::size_t k = m.feature_tagset.size();
  const std::size_t v = m.lexicon.size();
  m.sentence_count = static_cast<std::int64_t>(corpus.sentences.size());
  m.pi_count.assign(n, 0);
  m.trans_f_count = Grid3<std::int64_t>(k, n, n);
  m.emit_f_count = Grid3<std::int64_t>(k, n, v);

  for (const auto& s : corpus.sentences) {
    std::vector<std::size_t> st(s.size()), tg(s.size());
    for (std::size_t r = 0; r < s.size(); ++r) {
      st[r] = static_cast<std::size_t>(m.state_index(s.ing_states[r]));
      tg[r] = static_cast<std::size_t>(m.tag_index(s.pos_labels[r]));
    }
    m.pi_count[st[0]] += 1;
    for (std::size_t r = 0; r < s.size(); ++r) {
      std::size_t w = static_cast<std::size_t>(m.lexicon.index_of(s.tokens[r]));
      m.emit_f_count(tg[r], st[r], w) += 1;
      if (r >= 1) m.trans_f_count(tg[r - 1], st[r - 1], st[r]) += 1;
    }
  }

  m.pi.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    m.pi[j] = detail::ratio(m.pi_count[j], m.sentence_count, epsilon, n);

  m.trans_f = Grid3<double>(k, n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t total = m.trans_f_count.row_sum(i, j);
      for (std::size_t x = 0; x < n; ++x)
        m.trans_f(i, j, x) = detail::ratio(m.trans_f_count(i, j, x), total, epsilon, n);
    }

  m.emit_f = Grid3<double>(k, n, v);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t total = m.emit_f_count.row_sum(i, j);
      for (std::size_t w = 0; w < v; ++w)
        m.emit_f(i, j, w) = detail::ratio(m.emit_f_count(i, j, w), total, epsilon, v);
    }

  m.prefix_emit_f = build_prefix_table(m.emit_f, m.lexicon);
  return m;
}

}  // namespace seqtag
