#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "seqtag/corpus.hpp"
#include "seqtag/metrics.hpp"
#include "seqtag/pipeline.hpp"
#include "seqtag/rng.hpp"

namespace seqtag {

enum class EvalFamily { first_order, second_order, ie_oracle, ie_predicted };

inline const char* eval_family_name(EvalFamily f) {
  switch (f) {
    case EvalFamily::first_order: return "first_order";
    case EvalFamily::second_order: return "second_order";
    case EvalFamily::ie_oracle: return "ie_oracle";
    default: return "ie_predicted";
  }
}

struct EvalOptions {
  EvalFamily family = EvalFamily::first_order;
  Field obs_field = Field::token;  // first/second order baselines: token or pos_label
  double lambda = 4.0;             // layer-2 emission weight (IE families)
  Space space = Space::log_space;
  bool lambda_on_oov = false;
  Layer1Family layer1_family = Layer1Family::first_order;
  double epsilon = 0.0;
};

namespace detail {

// Baseline HMMs carry no emission weight; lambda applies to layer 2 only.
inline DecodeRequest baseline_request(const std::vector<std::string>& obs,
                                      const EvalOptions& opt) {
  DecodeRequest req;
  req.observations = obs;
  req.lambda = 1.0;
  req.space = opt.space;
  return req;
}

struct DecodedCorpus {
  std::vector<std::vector<std::string>> gold;
  std::vector<std::vector<std::string>> predicted;
  std::vector<std::vector<bool>> oov_masks;
  // Layer-1 tag predictions for the predicted-tag extractor.
  std::vector<std::vector<std::string>> gold_tags;
  std::vector<std::vector<std::string>> predicted_tags;
};

inline void add_layer1_metrics(EvalReport& rep, const DecodedCorpus& dec) {
  if (dec.predicted_tags.empty()) return;
  std::vector<std::vector<bool>> masks;
  masks.reserve(dec.gold_tags.size());
  for (const auto& s : dec.gold_tags) masks.emplace_back(s.size(), false);
  EvalReport l1 = score(dec.gold_tags, dec.predicted_tags, masks);
  rep.layer1_accuracy = l1.token_accuracy;
  rep.layer1_f1 = l1.macro_f1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed test: decode a corpus with a model trained on that same corpus.

inline EvalReport closed_test(const Corpus& corpus, const FirstOrderModel& model,
                              const EvalOptions& opt) {
  detail::DecodedCorpus dec;
  for (const auto& s : corpus.sentences) {
    DecodeRequest req = detail::baseline_request(s.field(opt.obs_field), opt);
    DecodeResult r = viterbi_first_order(model, req);
    dec.gold.push_back(s.ing_states);
    dec.predicted.push_back(r.states);
    dec.oov_masks.push_back(r.oov_mask);
  }
  return score(dec.gold, dec.predicted, dec.oov_masks);
}

inline EvalReport closed_test(const Corpus& corpus, const SecondOrderModel& model,
                              const EvalOptions& opt) {
  detail::DecodedCorpus dec;
  for (const auto& s : corpus.sentences) {
    DecodeRequest req = detail::baseline_request(s.field(opt.obs_field), opt);
    DecodeResult r = viterbi_second_order(model, req);
    dec.gold.push_back(s.ing_states);
    dec.predicted.push_back(r.states);
    dec.oov_masks.push_back(r.oov_mask);
  }
  return score(dec.gold, dec.predicted, dec.oov_masks);
}

// Oracle-tag condition: gold POS labels feed layer 2 directly.
inline EvalReport closed_test(const Corpus& corpus, const FeatureConditionedModel& model,
                              const EvalOptions& opt) {
  detail::DecodedCorpus dec;
  for (const auto& s : corpus.sentences) {
    DecodeRequest req;
    req.observations = s.tokens;
    req.tags = s.pos_labels;
    req.lambda = opt.lambda;
    req.space = opt.space;
    req.lambda_on_oov = opt.lambda_on_oov;
    DecodeResult r = viterbi_feature_conditioned(model, req);
    dec.gold.push_back(s.ing_states);
    dec.predicted.push_back(r.states);
    dec.oov_masks.push_back(r.oov_mask);
  }
  return score(dec.gold, dec.predicted, dec.oov_masks);
}

inline EvalReport closed_test(const Corpus& corpus, const PipelineModel& pm,
                              const EvalOptions&) {
  detail::DecodedCorpus dec;
  for (const auto& s : corpus.sentences) {
    Extraction ex = pm.config.tag_source == TagSource::oracle
                        ? extract_ingredients(pm, s.tokens, TagSource::oracle, s.pos_labels)
                        : extract_ingredients(pm, s.tokens, TagSource::predicted);
    dec.gold.push_back(s.ing_states);
    dec.predicted.push_back(ex.states);
    dec.oov_masks.push_back(ex.diagnostics.oov_mask);
    if (pm.config.tag_source == TagSource::predicted) {
      dec.gold_tags.push_back(s.pos_labels);
      dec.predicted_tags.push_back(ex.tags);
    }
  }
  EvalReport rep = score(dec.gold, dec.predicted, dec.oov_masks);
  detail::add_layer1_metrics(rep, dec);
  return rep;
}

// Trains the requested family on the corpus and closed-tests it.
inline EvalReport closed_test(const Corpus& corpus, const EvalOptions& opt) {
  switch (opt.family) {
    case EvalFamily::first_order:
      return closed_test(
          corpus, estimate_first_order(corpus, opt.obs_field, Field::ing_state, opt.epsilon),
          opt);
    case EvalFamily::second_order:
      return closed_test(
          corpus, estimate_second_order(corpus, opt.obs_field, Field::ing_state, opt.epsilon),
          opt);
    case EvalFamily::ie_oracle:
      return closed_test(corpus, estimate_feature_conditioned(corpus, opt.epsilon), opt);
    default: {
      PipelineConfig cfg;
      cfg.lambda = opt.lambda;
      cfg.space = opt.space;
      cfg.lambda_on_oov = opt.lambda_on_oov;
      cfg.tag_source = TagSource::predicted;
      cfg.layer1_family = opt.layer1_family;
      cfg.epsilon = opt.epsilon;
      return closed_test(corpus, train_pipeline(corpus, cfg), opt);
    }
  }
}

// ---------------------------------------------------------------------------
// Cross-validation

namespace detail {

inline EvalReport eval_split(const Corpus& train, const std::vector<const AnnotatedSentence*>& test,
                             const EvalOptions& opt) {
  DecodedCorpus dec;
  if (opt.family == EvalFamily::first_order || opt.family == EvalFamily::second_order) {
    if (opt.family == EvalFamily::first_order) {
      FirstOrderModel m = estimate_first_order(train, opt.obs_field, Field::ing_state, opt.epsilon);
      for (const auto* s : test) {
        DecodeResult r = viterbi_first_order(m, baseline_request(s->field(opt.obs_field), opt));
        dec.gold.push_back(s->ing_states);
        dec.predicted.push_back(r.states);
        dec.oov_masks.push_back(r.oov_mask);
      }
    } else {
      SecondOrderModel m =
          estimate_second_order(train, opt.obs_field, Field::ing_state, opt.epsilon);
      for (const auto* s : test) {
        DecodeResult r = viterbi_second_order(m, baseline_request(s->field(opt.obs_field), opt));
        dec.gold.push_back(s->ing_states);
        dec.predicted.push_back(r.states);
        dec.oov_masks.push_back(r.oov_mask);
      }
    }
    return score(dec.gold, dec.predicted, dec.oov_masks);
  }

  if (opt.family == EvalFamily::ie_oracle) {
    FeatureConditionedModel m = estimate_feature_conditioned(train, opt.epsilon);
    for (const auto* s : test) {
      DecodeRequest req;
      req.observations = s->tokens;
      req.tags = s->pos_labels;
      req.lambda = opt.lambda;
      req.space = opt.space;
      req.lambda_on_oov = opt.lambda_on_oov;
      DecodeResult r = viterbi_feature_conditioned(m, req);
      dec.gold.push_back(s->ing_states);
      dec.predicted.push_back(r.states);
      dec.oov_masks.push_back(r.oov_mask);
    }
    return score(dec.gold, dec.predicted, dec.oov_masks);
  }

  PipelineConfig cfg;
  cfg.lambda = opt.lambda;
  cfg.space = opt.space;
  cfg.lambda_on_oov = opt.lambda_on_oov;
  cfg.tag_source = TagSource::predicted;
  cfg.layer1_family = opt.layer1_family;
  cfg.epsilon = opt.epsilon;
  PipelineModel pm = train_pipeline(train, cfg);
  for (const auto* s : test) {
    Extraction ex = extract_ingredients(pm, s->tokens, TagSource::predicted);
    dec.gold.push_back(s->ing_states);
    dec.predicted.push_back(ex.states);
    dec.oov_masks.push_back(ex.diagnostics.oov_mask);
    dec.gold_tags.push_back(s->pos_labels);
    dec.predicted_tags.push_back(ex.tags);
  }
  EvalReport rep = score(dec.gold, dec.predicted, dec.oov_masks);
  add_layer1_metrics(rep, dec);
  return rep;
}

inline void average_folds(EvalReport& total) {
  const double k = static_cast<double>(total.folds.size());
  double acc = 0, f1 = 0, oov_rate = 0;
  double known = 0, unknown = 0, f1_pos = 0, l1_acc = 0, l1_f1 = 0;
  std::size_t known_n = 0, unknown_n = 0, f1_pos_n = 0, l1_n = 0;
  for (const EvalReport& f : total.folds) {
    acc += f.token_accuracy;
    f1 += f.macro_f1;
    oov_rate += f.oov_rate;
    total.total_tokens += f.total_tokens;
    total.correct_tokens += f.correct_tokens;
    total.known_correct += f.known_correct;
    total.unknown_correct += f.unknown_correct;
    total.oov_count += f.oov_count;
    if (f.known_accuracy) known += *f.known_accuracy, ++known_n;
    if (f.unknown_accuracy) unknown += *f.unknown_accuracy, ++unknown_n;
    if (f.macro_f1_positive) f1_pos += *f.macro_f1_positive, ++f1_pos_n;
    if (f.layer1_accuracy) l1_acc += *f.layer1_accuracy, l1_f1 += *f.layer1_f1, ++l1_n;
  }
  total.token_accuracy = acc / k;
  total.macro_f1 = f1 / k;
  total.oov_rate = oov_rate / k;
  if (known_n) total.known_accuracy = known / known_n;
  if (unknown_n) total.unknown_accuracy = unknown / unknown_n;
  if (f1_pos_n) total.macro_f1_positive = f1_pos / f1_pos_n;
  if (l1_n) {
    total.layer1_accuracy = l1_acc / l1_n;
    total.layer1_f1 = l1_f1 / l1_n;
  }
}

}  // namespace detail

// Train on k-1 folds, score the held-out fold against the training lexicon;
// the returned report holds fold averages with per-fold rows in `folds`.
inline EvalReport cross_validate(const Corpus& corpus, std::size_t k, std::uint64_t seed,
                                 const EvalOptions& opt) {
  FoldPlan plan = split_folds(corpus, k, seed);
  EvalReport total;
  for (std::size_t fold = 0; fold < k; ++fold) {
    std::vector<AnnotatedSentence> train_sents;
    std::vector<const AnnotatedSentence*> test_sents;
    for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
      if (plan.assignment[i] == fold)
        test_sents.push_back(&corpus.sentences[i]);
      else
        train_sents.push_back(corpus.sentences[i]);
    }
    if (test_sents.empty()) throw config_error("fold " + std::to_string(fold) + " is empty");
    Corpus train = make_corpus(std::move(train_sents), corpus.source);
    total.folds.push_back(detail::eval_split(train, test_sents, opt));
  }
  detail::average_folds(total);
  return total;
}

// ---------------------------------------------------------------------------
// Lambda sweep

struct SweepCondition {
  enum class Kind { oracle, predicted, degraded };
  Kind kind = Kind::oracle;
  double target_accuracy = 1.0;  // degraded only

  std::string name() const {
    switch (kind) {
      case Kind::oracle: return "oracle";
      case Kind::predicted: return "predicted";
      default: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "degraded:%.4f", target_accuracy);
        return buf;
      }
    }
  }
};

struct SweepPoint {
  double lambda = 0.0;
  std::string condition;
  double accuracy = 0.0;
  double f1 = 0.0;
};

struct SweepCurve {
  std::vector<SweepPoint> points;  // grouped by condition, lambda ascending
};

// Replaces gold tags at a seeded random set of positions (with a uniformly
// drawn different tag) until exactly round((1-target)*T) tokens are wrong.
inline std::vector<std::vector<std::string>> degrade_tags(const Corpus& corpus, double target,
                                                          Rng& rng) {
  if (!(target > 0.0) || target > 1.0)
    throw config_error("degraded-tag target accuracy must be in (0, 1]");
  std::vector<std::vector<std::string>> tags;
  tags.reserve(corpus.sentences.size());
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    tags.push_back(corpus.sentences[s].pos_labels);
    for (std::size_t i = 0; i < tags.back().size(); ++i) positions.emplace_back(s, i);
  }
  const std::size_t total = positions.size();
  const std::size_t wrong =
      static_cast<std::size_t>(std::llround((1.0 - target) * static_cast<double>(total)));
  if (wrong == 0) return tags;
  if (corpus.pos_tagset.size() < 2)
    throw config_error("target accuracy unreachable: the tagset has a single tag");

  for (std::size_t i = 0; i < wrong; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(positions[i], positions[j]);
    auto [s, t] = positions[i];
    const std::string& gold = corpus.sentences[s].pos_labels[t];
    std::size_t pick = static_cast<std::size_t>(rng.below(corpus.pos_tagset.size() - 1));
    if (corpus.pos_tagset[pick] == gold) pick = corpus.pos_tagset.size() - 1;
    tags[s][t] = corpus.pos_tagset[pick];
  }
  return tags;
}

// Closed test of the tag-conditioned layer per lambda under each first-layer
// condition. Degraded tag streams are drawn once per condition and reused
// across lambdas.
inline SweepCurve lambda_sweep(const Corpus& corpus, const std::vector<double>& lambdas,
                               const std::vector<SweepCondition>& conditions, std::uint64_t seed,
                               const EvalOptions& opt = {}) {
  if (lambdas.empty()) throw config_error("empty lambda list");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < 1.0) throw config_error("lambda values must be at least 1");
    if (i && lambdas[i] <= lambdas[i - 1])
      throw config_error("lambda values must be strictly increasing");
  }

  FeatureConditionedModel layer2 = estimate_feature_conditioned(corpus, opt.epsilon);
  Rng rng(seed);

  SweepCurve curve;
  for (const SweepCondition& cond : conditions) {
    std::vector<std::vector<std::string>> tags;
    tags.reserve(corpus.sentences.size());
    if (cond.kind == SweepCondition::Kind::oracle) {
      for (const auto& s : corpus.sentences) tags.push_back(s.pos_labels);
    } else if (cond.kind == SweepCondition::Kind::predicted) {
      PipelineConfig cfg;
      cfg.layer1_family = opt.layer1_family;
      cfg.epsilon = opt.epsilon;
      PipelineModel pm = train_pipeline(corpus, cfg);
      for (const auto& s : corpus.sentences) tags.push_back(predict_tags(pm, s.tokens).states);
    } else {
      tags = degrade_tags(corpus, cond.target_accuracy, rng);
    }

    for (double lambda : lambdas) {
      detail::DecodedCorpus dec;
      for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
        DecodeRequest req;
        req.observations = corpus.sentences[s].tokens;
        req.tags = tags[s];
        req.lambda = lambda;
        req.space = Space::log_space;
        req.lambda_on_oov = opt.lambda_on_oov;
        DecodeResult r = viterbi_feature_conditioned_log(layer2, req);
        dec.gold.push_back(corpus.sentences[s].ing_states);
        dec.predicted.push_back(r.states);
        dec.oov_masks.push_back(r.oov_mask);
      }
      EvalReport rep = score(dec.gold, dec.predicted, dec.oov_masks);
      curve.points.push_back({lambda, cond.name(), rep.token_accuracy, rep.macro_f1});
    }
  }
  return curve;
}

// ---------------------------------------------------------------------------
// CSV output. Fractions are printed with 4 decimals; absent metrics print as
// empty cells.

namespace detail {

inline std::string csv_frac(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string csv_opt(const std::optional<double>& v) {
  return v ? csv_frac(*v) : std::string();
}

}  // namespace detail

inline std::string closed_test_csv(const std::vector<std::pair<std::string, EvalReport>>& rows,
                                   const std::vector<std::string>& state_order) {
  std::string out = "model,accuracy,f1,f1_positive";
  for (const auto& s : state_order) out += ",f1_state_" + s;
  out += '\n';
  for (const auto& [name, rep] : rows) {
    out += name + ',' + detail::csv_frac(rep.token_accuracy) + ',' +
           detail::csv_frac(rep.macro_f1) + ',' + detail::csv_opt(rep.macro_f1_positive);
    for (const auto& s : state_order) {
      auto it = rep.per_class_f1.find(s);
      out += ',';
      out += it == rep.per_class_f1.end() ? std::string() : detail::csv_frac(it->second);
    }
    out += '\n';
  }
  return out;
}

inline std::string crossval_csv(const EvalReport& rep, bool with_layer1) {
  std::string out = "fold,accuracy,f1,accuracy_unknown,accuracy_known,unknown_count,unknown_pct";
  if (with_layer1) out += ",layer1_accuracy,layer1_f1";
  out += '\n';
  auto row = [&](const std::string& label, const EvalReport& r, bool avg) {
    out += label + ',' + detail::csv_frac(r.token_accuracy) + ',' + detail::csv_frac(r.macro_f1) +
           ',' + detail::csv_opt(r.unknown_accuracy) + ',' + detail::csv_opt(r.known_accuracy) +
           ',';
    if (avg)
      out += detail::csv_frac(static_cast<double>(r.oov_count) /
                              static_cast<double>(rep.folds.size()));
    else
      out += std::to_string(r.oov_count);
    out += ',' + detail::csv_frac(r.oov_rate);
    if (with_layer1) out += ',' + detail::csv_opt(r.layer1_accuracy) + ',' +
                            detail::csv_opt(r.layer1_f1);
    out += '\n';
  };
  for (std::size_t i = 0; i < rep.folds.size(); ++i)
    row(std::to_string(i), rep.folds[i], false);
  row("Avg", rep, true);
  return out;
}

inline std::string sweep_csv(const SweepCurve& curve) {
  std::string out = "lambda,condition,accuracy,f1\n";
  for (const SweepPoint& p : curve.points)
    out += detail::csv_frac(p.lambda) + ',' + p.condition + ',' + detail::csv_frac(p.accuracy) +
           ',' + detail::csv_frac(p.f1) + '\n';
  return out;
}

}  // namespace seqtag
