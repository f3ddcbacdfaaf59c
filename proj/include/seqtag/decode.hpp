#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "seqtag/errors.hpp"
#include "seqtag/lexicon.hpp"
#include "seqtag/model.hpp"

namespace seqtag {

enum class Space { probability, log_space };

enum class OovPolicy { prefix_table, error };

struct DecodeRequest {
  std::vector<std::string> observations;
  std::optional<std::vector<std::string>> tags;  // required for feature-conditioned decode
  double lambda = 4.0;                           // emission weight, log space only
  Space space = Space::log_space;
  OovPolicy oov_policy = OovPolicy::prefix_table;
  bool lambda_on_oov = false;  // apply lambda to prefix-table emissions too
  bool allow_fallback = true;  // substitute uniform factors at dead positions
};

struct DecodeResult {
  std::vector<std::string> states;
  double score = 0.0;  // probability, or log score in log space
  std::vector<bool> oov_mask;
  bool used_fallback = false;
};

namespace detail {

// Scoring conventions shared by every decoder and by the enumeration oracle
// (which re-implements them independently):
//   * paths are ORDERED by the log objective accumulated strictly left to
//     right, one factor at a time, in both spaces (log is monotone, so the
//     probability-space argmax is unchanged and the two spaces rank exact
//     ties identically); the returned score is then accumulated in the
//     requested space along the chosen path;
//   * log space weights each emission term by lambda except at position 0
//     and except for OOV tokens unless lambda_on_oov is set; probability
//     space never applies the weight;
//   * a position whose whole lattice layer has zero probability is "dead";
//     with fallback enabled the emission column there is replaced by the
//     uniform value 1/M, and if the layer stays dead the transition factor
//     into it (pi at position 0) is replaced by 1/N as well;
//   * ties are broken toward the lexicographically smallest state-index
//     sequence.
constexpr double kDeadLog = -std::numeric_limits<double>::infinity();

inline void validate_request(const DecodeRequest& req, bool need_tags) {
  if (req.observations.empty()) throw config_error("cannot decode an empty sentence");
  if (req.lambda < 1.0) throw config_error("lambda must be at least 1");
  if (need_tags && !req.tags)
    throw config_error("this model family requires a tag per token");
  if (req.tags && req.tags->size() != req.observations.size())
    throw config_error("tags length does not match observation length");
}

inline std::vector<bool> compute_oov_mask(const Lexicon& lex, const DecodeRequest& req) {
  std::vector<bool> mask(req.observations.size());
  for (std::size_t l = 0; l < mask.size(); ++l) {
    mask[l] = lex.index_of(req.observations[l]) < 0;
    if (mask[l] && req.oov_policy == OovPolicy::error)
      throw decode_error("unknown token \"" + req.observations[l] + "\" at position " +
                             std::to_string(l),
                         l);
  }
  return mask;
}

// Per-position emission weights for log space.
inline std::vector<double> emission_weights(const DecodeRequest& req,
                                            const std::vector<bool>& oov_mask) {
  std::vector<double> w(oov_mask.size(), 1.0);
  if (req.space != Space::log_space) return w;
  for (std::size_t l = 1; l < w.size(); ++l)
    if (!oov_mask[l] || req.lambda_on_oov) w[l] = req.lambda;
  return w;
}

// Column index ("word" or prefix id) for each position, and whether the
// prefix table is the source. -1 column means zero emission everywhere.
struct ObsColumn {
  long column;
  bool via_prefix;
};

inline std::vector<ObsColumn> resolve_columns(const Lexicon& lex, const DecodeRequest& req,
                                              const std::vector<bool>& oov_mask) {
  std::vector<ObsColumn> cols(req.observations.size());
  for (std::size_t l = 0; l < cols.size(); ++l) {
    if (!oov_mask[l]) {
      cols[l] = {lex.index_of(req.observations[l]), false};
    } else {
      cols[l] = {lex.prefix_id_of(extract_prefix(req.observations[l])), true};
    }
  }
  return cols;
}

[[noreturn]] inline void throw_undecodable(std::size_t position) {
  throw decode_error("undecodable: every state sequence has zero probability at position " +
                         std::to_string(position),
                     position);
}

// ---------------------------------------------------------------------------
// Single-state-lattice Viterbi (first-order and feature-conditioned models).
//
// pi(j), emis(l, j) and trans(l, i, j) return raw probabilities; trans(l,...)
// is the factor for entering position l (l >= 1). The forward recursion keeps
// canonical left-to-right accumulation so every delta value is the exact score
// of some path prefix; the optimal path set is then recovered by bit-exact
// recomputation and walked forward choosing the smallest state index.
template <typename Pi, typename Emis, typename Trans>
struct ChainLattice {
  std::size_t n, len;
  Pi pi;
  Emis emis;
  Trans trans;
  std::vector<double> weight;  // emission weight per position
  bool log_space;
  double uniform_emission;
  bool allow_fallback;

  std::vector<int> levels;  // fallback level per position: 0 none, 1 emission, 2 + transition

  double resolved_pi(std::size_t j) const { return levels[0] == 2 ? 1.0 / n : pi(j); }
  double resolved_emis(std::size_t l, std::size_t j) const {
    return levels[l] >= 1 ? uniform_emission : emis(l, j);
  }
  double resolved_trans(std::size_t l, std::size_t i, std::size_t j) const {
    return levels[l] == 2 ? 1.0 / n : trans(l, i, j);
  }

  double start_score(std::size_t j) const {
    return std::log(resolved_pi(j)) + weight[0] * std::log(resolved_emis(0, j));
  }
  double step_score(double prev, std::size_t l, std::size_t i, std::size_t j) const {
    return (prev + std::log(resolved_trans(l, i, j))) + weight[l] * std::log(resolved_emis(l, j));
  }
  double path_probability(const std::vector<std::size_t>& path) const {
    double s = resolved_pi(path[0]);
    s = s * resolved_emis(0, path[0]);
    for (std::size_t l = 1; l < len; ++l) {
      s = s * resolved_trans(l, path[l - 1], path[l]);
      s = s * resolved_emis(l, path[l]);
    }
    return s;
  }

  // Dead-layer scan on raw probabilities (zero-ness is identical in both
  // spaces). Raises the fallback level until every layer is reachable.
  void scan() {
    levels.assign(len, 0);
    std::vector<bool> live(n), next(n);
    for (std::size_t l = 0; l < len; ++l) {
      for (int attempt = 0;; ++attempt) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
          bool ok = resolved_emis(l, j) > 0.0;
          if (ok) {
            if (l == 0) {
              ok = resolved_pi(j) > 0.0;
            } else {
              ok = false;
              if (levels[l] == 2) {
                for (std::size_t i = 0; i < n && !ok; ++i) ok = live[i];
              } else {
                for (std::size_t i = 0; i < n && !ok; ++i)
                  ok = live[i] && trans(l, i, j) > 0.0;
              }
            }
          }
          next[j] = ok;
          any = any || ok;
        }
        if (any) break;
        if (!allow_fallback) throw_undecodable(l);
        if (levels[l] >= 2) throw_undecodable(l);  // cannot happen: level 2 revives the layer
        ++levels[l];
      }
      live.swap(next);
    }
  }

  void run(std::vector<std::size_t>* path, double* score, bool* used_fallback) {
    scan();

    std::vector<std::vector<double>> delta(len, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) delta[0][j] = start_score(j);
    for (std::size_t l = 1; l < len; ++l)
      for (std::size_t j = 0; j < n; ++j) {
        double best = kDeadLog;
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
          double cand = step_score(delta[l - 1][i], l, i, j);
          if (first || cand > best) best = cand;
          first = false;
        }
        delta[l][j] = best;
      }

    double total = delta[len - 1][0];
    for (std::size_t j = 1; j < n; ++j)
      if (delta[len - 1][j] > total) total = delta[len - 1][j];

    // Mark states lying on some optimal path.
    std::vector<std::vector<bool>> opt(len, std::vector<bool>(n, false));
    for (std::size_t j = 0; j < n; ++j) opt[len - 1][j] = delta[len - 1][j] == total;
    for (std::size_t l = len - 1; l >= 1; --l)
      for (std::size_t i = 0; i < n; ++i) {
        bool on = false;
        for (std::size_t j = 0; j < n && !on; ++j)
          on = opt[l][j] && step_score(delta[l - 1][i], l, i, j) == delta[l][j];
        opt[l - 1][i] = on;
      }

    path->resize(len);
    std::size_t cur = 0;
    while (!opt[0][cur]) ++cur;
    (*path)[0] = cur;
    for (std::size_t l = 1; l < len; ++l) {
      std::size_t nxt = 0;
      while (!(opt[l][nxt] && step_score(delta[l - 1][cur], l, cur, nxt) == delta[l][nxt])) ++nxt;
      (*path)[l] = nxt;
      cur = nxt;
    }

    *score = log_space ? total : path_probability(*path);
    *used_fallback = false;
    for (int lv : levels) *used_fallback = *used_fallback || lv > 0;
  }
};

// ---------------------------------------------------------------------------
// Pair-lattice Viterbi (full second-order model). Lattice nodes from position
// 1 onward are (previous state, current state) pairs.
template <typename Pi, typename Emis1, typename Emis2, typename Trans2, typename Trans3>
struct PairLattice {
  std::size_t n, len;
  Pi pi;        // pi(j)
  Emis1 emis1;  // emission at position 0, single-state context
  Emis2 emis2;  // emis2(l, i, j): emission at position l >= 1 with previous state i
  Trans2 trans2;
  Trans3 trans3;
  std::vector<double> weight;
  bool log_space;
  double uniform_emission;
  bool allow_fallback;

  std::vector<int> levels;

  double resolved_pi(std::size_t j) const { return levels[0] == 2 ? 1.0 / n : pi(j); }
  double resolved_emis1(std::size_t j) const {
    return levels[0] >= 1 ? uniform_emission : emis1(j);
  }
  double resolved_emis2(std::size_t l, std::size_t i, std::size_t j) const {
    return levels[l] >= 1 ? uniform_emission : emis2(l, i, j);
  }
  double resolved_trans2(std::size_t j, std::size_t k) const {
    return levels[1] == 2 ? 1.0 / n : trans2(j, k);
  }
  double resolved_trans3(std::size_t l, std::size_t i, std::size_t j, std::size_t k) const {
    return levels[l] == 2 ? 1.0 / n : trans3(i, j, k);
  }

  double start_score(std::size_t j) const {
    return std::log(resolved_pi(j)) + weight[0] * std::log(resolved_emis1(j));
  }
  double pair_start_score(double prev, std::size_t j, std::size_t k) const {
    return (prev + std::log(resolved_trans2(j, k))) + weight[1] * std::log(resolved_emis2(1, j, k));
  }
  double step_score(double prev, std::size_t l, std::size_t i, std::size_t j,
                    std::size_t k) const {
    return (prev + std::log(resolved_trans3(l, i, j, k))) +
           weight[l] * std::log(resolved_emis2(l, j, k));
  }
  double path_probability(const std::vector<std::size_t>& path) const {
    double s = resolved_pi(path[0]);
    s = s * resolved_emis1(path[0]);
    if (len > 1) {
      s = s * resolved_trans2(path[0], path[1]);
      s = s * resolved_emis2(1, path[0], path[1]);
    }
    for (std::size_t l = 2; l < len; ++l) {
      s = s * resolved_trans3(l, path[l - 2], path[l - 1], path[l]);
      s = s * resolved_emis2(l, path[l - 1], path[l]);
    }
    return s;
  }

  void scan() {
    levels.assign(len, 0);
    std::vector<bool> live0(n);
    for (int attempt = 0;; ++attempt) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        live0[j] = resolved_pi(j) > 0.0 && resolved_emis1(j) > 0.0;
        any = any || live0[j];
      }
      if (any) break;
      if (!allow_fallback || levels[0] >= 2) throw_undecodable(0);
      ++levels[0];
    }
    if (len == 1) return;

    std::vector<bool> live(n * n), next(n * n);
    for (int attempt = 0;; ++attempt) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          bool ok = live0[j] && resolved_emis2(1, j, k) > 0.0 &&
                    (levels[1] == 2 || trans2(j, k) > 0.0);
          live[j * n + k] = ok;
          any = any || ok;
        }
      if (any) break;
      if (!allow_fallback || levels[1] >= 2) throw_undecodable(1);
      ++levels[1];
    }
    for (std::size_t l = 2; l < len; ++l) {
      for (int attempt = 0;; ++attempt) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            bool ok = resolved_emis2(l, j, k) > 0.0;
            if (ok) {
              bool reach = false;
              for (std::size_t i = 0; i < n && !reach; ++i)
                reach = live[i * n + j] && (levels[l] == 2 || trans3(i, j, k) > 0.0);
              ok = reach;
            }
            next[j * n + k] = ok;
            any = any || ok;
          }
        if (any) break;
        if (!allow_fallback || levels[l] >= 2) throw_undecodable(l);
        ++levels[l];
      }
      live.swap(next);
    }
  }

  void run(std::vector<std::size_t>* path, double* score, bool* used_fallback) {
    scan();
    path->resize(len);
    *used_fallback = false;
    for (int lv : levels) *used_fallback = *used_fallback || lv > 0;

    std::vector<double> d0(n);
    for (std::size_t j = 0; j < n; ++j) d0[j] = start_score(j);

    if (len == 1) {
      double total = d0[0];
      for (std::size_t j = 1; j < n; ++j)
        if (d0[j] > total) total = d0[j];
      std::size_t j = 0;
      while (d0[j] != total) ++j;
      (*path)[0] = j;
      *score = log_space ? total : path_probability(*path);
      return;
    }

    std::vector<std::vector<double>> delta(len, std::vector<double>(n * n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        delta[1][j * n + k] = pair_start_score(d0[j], j, k);
    for (std::size_t l = 2; l < len; ++l)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double best = kDeadLog;
          bool first = true;
          for (std::size_t i = 0; i < n; ++i) {
            double cand = step_score(delta[l - 1][i * n + j], l, i, j, k);
            if (first || cand > best) best = cand;
            first = false;
          }
          delta[l][j * n + k] = best;
        }

    double total = delta[len - 1][0];
    for (std::size_t p = 1; p < n * n; ++p)
      if (delta[len - 1][p] > total) total = delta[len - 1][p];

    std::vector<std::vector<bool>> opt(len, std::vector<bool>(n * n, false));
    for (std::size_t p = 0; p < n * n; ++p) opt[len - 1][p] = delta[len - 1][p] == total;
    for (std::size_t l = len - 1; l >= 2; --l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          bool on = false;
          for (std::size_t k = 0; k < n && !on; ++k)
            on = opt[l][j * n + k] &&
                 step_score(delta[l - 1][i * n + j], l, i, j, k) == delta[l][j * n + k];
          opt[l - 1][i * n + j] = opt[l - 1][i * n + j] || on;
        }
    std::vector<bool> opt0(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      bool on = false;
      for (std::size_t k = 0; k < n && !on; ++k)
        on = opt[1][j * n + k] && pair_start_score(d0[j], j, k) == delta[1][j * n + k];
      opt0[j] = on;
    }

    std::size_t j = 0;
    while (!opt0[j]) ++j;
    (*path)[0] = j;
    std::size_t k = 0;
    while (!(opt[1][j * n + k] && pair_start_score(d0[j], j, k) == delta[1][j * n + k])) ++k;
    (*path)[1] = k;
    for (std::size_t l = 2; l < len; ++l) {
      std::size_t i = (*path)[l - 2];
      std::size_t jj = (*path)[l - 1];
      std::size_t kk = 0;
      while (!(opt[l][jj * n + kk] &&
               step_score(delta[l - 1][i * n + jj], l, i, jj, kk) == delta[l][jj * n + kk]))
        ++kk;
      (*path)[l] = kk;
    }
    *score = log_space ? total : path_probability(*path);
  }
};

inline std::vector<std::string> indices_to_symbols(const std::vector<std::string>& symbols,
                                                   const std::vector<std::size_t>& path) {
  std::vector<std::string> out(path.size());
  for (std::size_t l = 0; l < path.size(); ++l) out[l] = symbols[path[l]];
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public decoders

inline DecodeResult viterbi_first_order(const FirstOrderModel& model, const DecodeRequest& req) {
  detail::validate_request(req, false);
  DecodeResult res;
  res.oov_mask = detail::compute_oov_mask(model.lexicon, req);
  auto cols = detail::resolve_columns(model.lexicon, req, res.oov_mask);

  const std::size_t n = model.num_states();
  auto emis = [&](std::size_t l, std::size_t j) -> double {
    if (cols[l].column < 0) return 0.0;
    std::size_t c = static_cast<std::size_t>(cols[l].column);
    return cols[l].via_prefix ? model.prefix_emit.table(j, c) : model.emit(j, c);
  };
  auto pi = [&](std::size_t j) { return model.pi[j]; };
  auto trans = [&](std::size_t, std::size_t i, std::size_t j) { return model.trans(i, j); };
  detail::ChainLattice<decltype(pi), decltype(emis), decltype(trans)> lat{
      n,
      req.observations.size(),
      pi,
      emis,
      trans,
      detail::emission_weights(req, res.oov_mask),
      req.space == Space::log_space,
      1.0 / static_cast<double>(model.lexicon.size()),
      req.allow_fallback,
      {}};

  std::vector<std::size_t> path;
  lat.run(&path, &res.score, &res.used_fallback);
  res.states = detail::indices_to_symbols(model.state_set, path);
  return res;
}

inline DecodeResult viterbi_second_order(const SecondOrderModel& model, const DecodeRequest& req) {
  detail::validate_request(req, false);
  DecodeResult res;
  res.oov_mask = detail::compute_oov_mask(model.lexicon, req);
  auto cols = detail::resolve_columns(model.lexicon, req, res.oov_mask);

  const std::size_t n = model.num_states();
  auto pi = [&](std::size_t j) { return model.pi[j]; };
  auto emis1 = [&](std::size_t j) -> double {
    if (cols[0].column < 0) return 0.0;
    std::size_t c = static_cast<std::size_t>(cols[0].column);
    return cols[0].via_prefix ? model.prefix_emit1.table(j, c) : model.emit1(j, c);
  };
  auto emis2 = [&](std::size_t l, std::size_t i, std::size_t j) -> double {
    if (cols[l].column < 0) return 0.0;
    std::size_t c = static_cast<std::size_t>(cols[l].column);
    return cols[l].via_prefix ? model.prefix_emit2.table(i, j, c) : model.emit2(i, j, c);
  };
  auto trans2 = [&](std::size_t j, std::size_t k) { return model.trans2(j, k); };
  auto trans3 = [&](std::size_t i, std::size_t j, std::size_t k) { return model.trans3(i, j, k); };

  detail::PairLattice<decltype(pi), decltype(emis1), decltype(emis2), decltype(trans2),
                      decltype(trans3)>
      lat{n,
          req.observations.size(),
          pi,
          emis1,
          emis2,
          trans2,
          trans3,
          detail::emission_weights(req, res.oov_mask),
          req.space == Space::log_space,
          1.0 / static_cast<double>(model.lexicon.size()),
          req.allow_fallback,
      {}};

  std::vector<std::size_t> path;
  lat.run(&path, &res.score, &res.used_fallback);
  res.states = detail::indices_to_symbols(model.state_set, path);
  return res;
}

// Tag-pinned decode: position l only ever consults the table slices for the
// layer-1 tag at l, so the lattice stays one state wide per position.
inline DecodeResult viterbi_feature_conditioned(const FeatureConditionedModel& model,
                                                const DecodeRequest& req) {
  detail::validate_request(req, true);
  DecodeResult res;
  res.oov_mask = detail::compute_oov_mask(model.lexicon, req);
  auto cols = detail::resolve_columns(model.lexicon, req, res.oov_mask);

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

  const std::size_t n = model.num_states();
  auto pi = [&](std::size_t j) { return model.pi[j]; };
  auto emis = [&](std::size_t l, std::size_t j) -> double {
    if (cols[l].column < 0) return 0.0;
    std::size_t c = static_cast<std::size_t>(cols[l].column);
    return cols[l].via_prefix ? model.prefix_emit_f.table(tag_ids[l], j, c)
                              : model.emit_f(tag_ids[l], j, c);
  };
  auto trans = [&](std::size_t l, std::size_t i, std::size_t j) {
    return model.trans_f(tag_ids[l - 1], i, j);
  };

  detail::ChainLattice<decltype(pi), decltype(emis), decltype(trans)> lat{
      n,
      len,
      pi,
      emis,
      trans,
      detail::emission_weights(req, res.oov_mask),
      req.space == Space::log_space,
      1.0 / static_cast<double>(model.lexicon.size()),
      req.allow_fallback,
      {}};

  std::vector<std::size_t> path;
  lat.run(&path, &res.score, &res.used_fallback);
  res.states = detail::indices_to_symbols(model.state_set, path);
  return res;
}

// Log-space entry point with the emission weight; kept as a named operation
// because it is the form the two-layer extractor runs.
inline DecodeResult viterbi_feature_conditioned_log(const FeatureConditionedModel& model,
                                                    DecodeRequest req) {
  req.space = Space::log_space;
  return viterbi_feature_conditioned(model, req);
}

}  // namespace seqtag
