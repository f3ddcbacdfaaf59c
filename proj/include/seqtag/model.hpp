#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqtag/grid.hpp"
#include "seqtag/lexicon.hpp"

namespace seqtag {

// Emission table aggregated over words sharing a prefix key; substituted for
// the word emission table when a token is out of vocabulary. The context axes
// match the emission table it was built from; only the word axis is replaced
// by the prefix axis.
template <typename TableT>
struct PrefixTable {
  std::vector<std::string> prefixes;
  TableT table;

  bool operator==(const PrefixTable&) const = default;
};

namespace detail {

inline long symbol_index(const std::vector<std::string>& symbols, const std::string& s) {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == s) return static_cast<long>(i);
  return -1;
}

}  // namespace detail

// pi[j], trans[i][j] = P(state j | previous state i), emit[j][w] = P(word w | state j).
// Probability rows over contexts never observed in training are all-zero.
// Raw counts are kept alongside for audit output and derived tables.
struct FirstOrderModel {
  std::vector<std::string> state_set;
  Lexicon lexicon;

  std::vector<double> pi;
  Grid2<double> trans;
  Grid2<double> emit;
  PrefixTable<Grid2<double>> prefix_emit;

  std::int64_t sentence_count = 0;
  std::vector<std::int64_t> pi_count;
  Grid2<std::int64_t> trans_count;
  Grid2<std::int64_t> emit_count;

  std::size_t num_states() const { return state_set.size(); }
  long state_index(const std::string& s) const { return detail::symbol_index(state_set, s); }

  bool operator==(const FirstOrderModel&) const = default;
};

// Full second-order model: trigram transitions trans3[i][j][k] =
// P(state k | previous j, one before i) and pair-conditioned emissions
// emit2[i][j][w] = P(word w | state j, previous state i).
//
// The first two positions of a sentence have no trigram context, so decoding
// uses count-derived marginals: emit1[j][w] (predecessor axis of the emit2
// counts summed out) at position 1 and trans2[j][k] (first axis of the trigram
// transition counts summed out) into position 2.
struct SecondOrderModel {
  std::vector<std::string> state_set;
  Lexicon lexicon;

  std::vector<double> pi;
  Grid3<double> trans3;
  Grid3<double> emit2;
  Grid2<double> trans2;
  Grid2<double> emit1;
  PrefixTable<Grid3<double>> prefix_emit2;
  PrefixTable<Grid2<double>> prefix_emit1;

  std::int64_t sentence_count = 0;
  std::vector<std::int64_t> pi_count;
  Grid3<std::int64_t> trans3_count;
  Grid3<std::int64_t> emit2_count;

  std::size_t num_states() const { return state_set.size(); }
  long state_index(const std::string& s) const { return detail::symbol_index(state_set, s); }

  bool operator==(const SecondOrderModel&) const = default;
};

// Trigram-shaped model whose outer context axis is a feature tag stream
// produced by another tagger: trans_f[i][j][k] = P(state k | previous state j,
// previous tag t_i) and emit_f[i][j][w] = P(word w | state j, tag t_i at the
// same position).
struct FeatureConditionedModel {
  std::vector<std::string> state_set;
  std::vector<std::string> feature_tagset;
  Lexicon lexicon;

  std::vector<double> pi;
  Grid3<double> trans_f;  // K x N x N
  Grid3<double> emit_f;   // K x N x M
  PrefixTable<Grid3<double>> prefix_emit_f;  // K x N x P

  std::int64_t sentence_count = 0;
  std::vector<std::int64_t> pi_count;
  Grid3<std::int64_t> trans_f_count;
  Grid3<std::int64_t> emit_f_count;

  std::size_t num_states() const { return state_set.size(); }
  std::size_t num_tags() const { return feature_tagset.size(); }
  long state_index(const std::string& s) const { return detail::symbol_index(state_set, s); }
  long tag_index(const std::string& t) const { return detail::symbol_index(feature_tagset, t); }

  bool operator==(const FeatureConditionedModel&) const = default;
};

}  // namespace seqtag
