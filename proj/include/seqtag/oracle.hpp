#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "seqtag/decode.hpp"
#include "seqtag/errors.hpp"
#include "seqtag/model.hpp"

namespace seqtag {

// Exhaustive decoding over all N^L state sequences. Shares the objective
// definition (request preprocessing, emission columns, weights, uniform
// fallback constants) with the Viterbi decoders but none of their recursion:
// every sequence is scored by a plain left-to-right loop, the dead-position
// scan is done by enumeration, and the argmax keeps the first (and therefore
// lexicographically smallest) maximal sequence. Sequences are ordered by the
// left-to-right log accumulation in both spaces; for probability-space
// requests the reported score is the product accumulated along the winner.

namespace oracle_detail {

constexpr std::size_t kMaxInstances = 10'000'000;

inline void check_instance_size(std::size_t n, std::size_t len) {
  std::size_t total = 1;
  for (std::size_t l = 0; l < len; ++l) {
    if (total > kMaxInstances / n)
      throw config_error("instance too large for exhaustive decoding");
    total *= n;
  }
}

inline bool advance(std::vector<std::size_t>& seq, std::size_t n) {
  for (std::size_t pos = seq.size(); pos-- > 0;) {
    if (++seq[pos] < n) return true;
    seq[pos] = 0;
  }
  return false;
}

struct Factors {
  bool log_space;
  std::vector<double> weight;
  double uniform_emission;
  std::size_t n;
};

// One position's contribution: entry factor (pi or transition) and emission.
struct Contribution {
  double entry;
  double emission;
};

struct SequenceScore {
  double log_value;   // ordering key in both spaces
  double probability; // reported score for probability-space requests
  std::size_t dead;   // first dead position, len if alive
};

template <typename FactorAt>
SequenceScore score_sequence(const std::vector<std::size_t>& seq, const std::vector<int>& levels,
                             const Factors& f, FactorAt factor_at) {
  SequenceScore out{0.0, 1.0, seq.size()};
  bool alive = true;
  for (std::size_t l = 0; l < seq.size(); ++l) {
    Contribution c = factor_at(l, seq);
    double entry = levels[l] == 2 ? 1.0 / static_cast<double>(f.n) : c.entry;
    double emission = levels[l] >= 1 ? f.uniform_emission : c.emission;
    out.log_value = (out.log_value + std::log(entry)) + f.weight[l] * std::log(emission);
    out.probability = (out.probability * entry) * emission;
    if (alive && !(entry > 0.0 && emission > 0.0)) {
      out.dead = l;
      alive = false;
    }
  }
  return out;
}

// accumulate(seq, levels) -> SequenceScore
template <typename Accum>
std::pair<std::vector<std::size_t>, double> search(std::size_t n, std::size_t len,
                                                   bool allow_fallback, bool log_space,
                                                   std::vector<int>& levels, Accum accumulate) {
  check_instance_size(n, len);
  levels.assign(len, 0);

  // Raise fallback levels until some complete sequence survives.
  for (;;) {
    bool any_alive = false;
    std::size_t latest_death = 0;
    std::vector<std::size_t> seq(len, 0);
    do {
      SequenceScore sc = accumulate(seq, levels);
      if (sc.dead == len) {
        any_alive = true;
        break;
      }
      if (sc.dead > latest_death) latest_death = sc.dead;
    } while (advance(seq, n));
    if (any_alive) break;
    if (!allow_fallback || levels[latest_death] >= 2)
      detail::throw_undecodable(latest_death);
    ++levels[latest_death];
  }

  bool first = true;
  double best_log = 0.0, best_prob = 0.0;
  std::vector<std::size_t> best_seq;
  std::vector<std::size_t> seq(len, 0);
  do {
    SequenceScore sc = accumulate(seq, levels);
    if (first || sc.log_value > best_log) {
      best_log = sc.log_value;
      best_prob = sc.probability;
      best_seq = seq;
      first = false;
    }
  } while (advance(seq, n));
  return {best_seq, log_space ? best_log : best_prob};
}

}  // namespace oracle_detail

inline DecodeResult brute_force_decode(const FirstOrderModel& model, const DecodeRequest& req) {
  detail::validate_request(req, false);
  DecodeResult res;
  res.oov_mask = detail::compute_oov_mask(model.lexicon, req);
  auto cols = detail::resolve_columns(model.lexicon, req, res.oov_mask);
  const std::size_t n = model.num_states();
  const std::size_t len = req.observations.size();

  oracle_detail::Factors f{req.space == Space::log_space,
                           detail::emission_weights(req, res.oov_mask),
                           1.0 / static_cast<double>(model.lexicon.size()), n};
  auto factor_at = [&](std::size_t l, const std::vector<std::size_t>& seq) {
    oracle_detail::Contribution c;
    c.entry = l == 0 ? model.pi[seq[0]] : model.trans(seq[l - 1], seq[l]);
    if (cols[l].column < 0) {
      c.emission = 0.0;
    } else {
      std::size_t col = static_cast<std::size_t>(cols[l].column);
      c.emission =
          cols[l].via_prefix ? model.prefix_emit.table(seq[l], col) : model.emit(seq[l], col);
    }
    return c;
  };
  auto accumulate = [&](const std::vector<std::size_t>& seq, const std::vector<int>& levels) {
    return oracle_detail::score_sequence(seq, levels, f, factor_at);
  };

  std::vector<int> levels;
  auto [path, score] = oracle_detail::search(n, len, req.allow_fallback,
                                             req.space == Space::log_space, levels, accumulate);
  res.states = detail::indices_to_symbols(model.state_set, path);
  res.score = score;
  for (int lv : levels) res.used_fallback = res.used_fallback || lv > 0;
  return res;
}

inline DecodeResult brute_force_decode(const SecondOrderModel& model, const DecodeRequest& req) {
  detail::validate_request(req, false);
  DecodeResult res;
  res.oov_mask = detail::compute_oov_mask(model.lexicon, req);
  auto cols = detail::resolve_columns(model.lexicon, req, res.oov_mask);
  const std::size_t n = model.num_states();
  const std::size_t len = req.observations.size();

  oracle_detail::Factors f{req.space == Space::log_space,
                           detail::emission_weights(req, res.oov_mask),
                           1.0 / static_cast<double>(model.lexicon.size()), n};
  auto factor_at = [&](std::size_t l, const std::vector<std::size_t>& seq) {
    oracle_detail::Contribution c;
    if (l == 0)
      c.entry = model.pi[seq[0]];
    else if (l == 1)
      c.entry = model.trans2(seq[0], seq[1]);
    else
      c.entry = model.trans3(seq[l - 2], seq[l - 1], seq[l]);
    if (cols[l].column < 0) {
      c.emission = 0.0;
    } else {
      std::size_t col = static_cast<std::size_t>(cols[l].column);
      if (l == 0)
        c.emission = cols[l].via_prefix ? model.prefix_emit1.table(seq[0], col)
                                        : model.emit1(seq[0], col);
      else
        c.emission = cols[l].via_prefix ? model.prefix_emit2.table(seq[l - 1], seq[l], col)
                                        : model.emit2(seq[l - 1], seq[l], col);
    }
    return c;
  };
  auto accumulate = [&](const std::vector<std::size_t>& seq, const std::vector<int>& levels) {
    return oracle_detail::score_sequence(seq, levels, f, factor_at);
  };

  std::vector<int> levels;
  auto [path, score] = oracle_detail::search(n, len, req.allow_fallback,
                                             req.space == Space::log_space, levels, accumulate);
  res.states = detail::indices_to_symbols(model.state_set, path);
  res.score = score;
  for (int lv : levels) res.used_fallback = res.used_fallback || lv > 0;
  return res;
}

inline DecodeResult brute_force_decode(const FeatureConditionedModel& model,
                                       const DecodeRequest& req) {
  detail::validate_request(req, true);
  DecodeResult res;
  res.oov_mask = detail::compute_oov_mask(model.lexicon, req);
  auto cols = detail::resolve_columns(model.lexicon, req, res.oov_mask);
  const std::size_t n = model.num_states();
  const std::size_t len = req.observations.size();

  std::vector<std::size_t> tag_ids(len);
  for (std::size_t l = 0; l < len; ++l) {
    long t = model.tag_index((*req.tags)[l]);
    if (t < 0)
      throw decode_error("tag \"" + (*req.tags)[l] + "\" at position " + std::to_string(l) +
                             " is not in the model tagset",
                         l);
    tag_ids[l] = static_cast<std::size_t>(t);
  }

  oracle_detail::Factors f{req.space == Space::log_space,
                           detail::emission_weights(req, res.oov_mask),
                           1.0 / static_cast<double>(model.lexicon.size()), n};
  auto factor_at = [&](std::size_t l, const std::vector<std::size_t>& seq) {
    oracle_detail::Contribution c;
    c.entry = l == 0 ? model.pi[seq[0]] : model.trans_f(tag_ids[l - 1], seq[l - 1], seq[l]);
    if (cols[l].column < 0) {
      c.emission = 0.0;
    } else {
      std::size_t col = static_cast<std::size_t>(cols[l].column);
      c.emission = cols[l].via_prefix ? model.prefix_emit_f.table(tag_ids[l], seq[l], col)
                                      : model.emit_f(tag_ids[l], seq[l], col);
    }
    return c;
  };
  auto accumulate = [&](const std::vector<std::size_t>& seq, const std::vector<int>& levels) {
    return oracle_detail::score_sequence(seq, levels, f, factor_at);
  };

  std::vector<int> levels;
  auto [path, score] = oracle_detail::search(n, len, req.allow_fallback,
                                             req.space == Space::log_space, levels, accumulate);
  res.states = detail::indices_to_symbols(model.state_set, path);
  res.score = score;
  for (int lv : levels) res.used_fallback = res.used_fallback || lv > 0;
  return res;
}

}  // namespace seqtag
