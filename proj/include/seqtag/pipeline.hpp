#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqtag/decode.hpp"
#include "seqtag/estimate.hpp"
#include "seqtag/model.hpp"

namespace seqtag {

enum class TagSource { predicted, oracle };
enum class Layer1Family { first_order, second_order };

struct PipelineConfig {
  double lambda = 4.0;
  Space space = Space::log_space;
  OovPolicy oov_policy = OovPolicy::prefix_table;
  bool lambda_on_oov = false;
  TagSource tag_source = TagSource::predicted;
  Layer1Family layer1_family = Layer1Family::first_order;
  double epsilon = 0.0;

  bool operator==(const PipelineConfig&) const = default;
};

// Two-layer extractor: layer 1 tags the token stream with POS labels, layer 2
// decodes ingredient states with the tag-conditioned model. Both layers are
// trained from the same corpus and share one lexicon.
struct PipelineModel {
  PipelineConfig config;
  std::variant<FirstOrderModel, SecondOrderModel> layer1;
  FeatureConditionedModel layer2;

  const Lexicon& lexicon() const { return layer2.lexicon; }

  bool operator==(const PipelineModel&) const = default;
};

inline PipelineModel train_pipeline(const Corpus& corpus, const PipelineConfig& config = {}) {
  if (corpus.sentences.empty()) throw config_error("cannot train a pipeline on an empty corpus");
  PipelineModel pm;
  pm.config = config;
  if (config.layer1_family == Layer1Family::first_order)
    pm.layer1 = estimate_first_order(corpus, Field::token, Field::pos_label, config.epsilon);
  else
    pm.layer1 = estimate_second_order(corpus, Field::token, Field::pos_label, config.epsilon);
  pm.layer2 = estimate_feature_conditioned(corpus, config.epsilon);
  return pm;
}

// ---------------------------------------------------------------------------
// Span assembly

enum class SpanKind { ingredient, malformed_start, state3 };

inline const char* span_kind_name(SpanKind k) {
  switch (k) {
    case SpanKind::ingredient: return "ingredient";
    case SpanKind::malformed_start: return "malformed_start";
    default: return "state3";
  }
}

struct IngredientSpan {
  std::size_t start = 0;  // token index
  std::size_t end = 0;    // inclusive
  std::string text;       // tokens joined with a single space
  SpanKind kind = SpanKind::ingredient;

  bool operator==(const IngredientSpan&) const = default;
};

// Maximal runs 1 2* become ingredient spans. A 2 with no live 1/2 before it
// starts a malformed_start span (also extended by following 2s); runs of 3s
// become their own state3 spans. Malformations are flagged, never repaired.
inline std::vector<IngredientSpan> states_to_spans(const std::vector<std::string>& tokens,
                                                   const std::vector<std::string>& states) {
  if (tokens.size() != states.size())
    throw config_error("token and state sequences differ in length");

  std::vector<IngredientSpan> spans;
  bool open = false;
  SpanKind open_kind = SpanKind::ingredient;

  auto begin_span = [&](std::size_t i, SpanKind kind) {
    spans.push_back({i, i, tokens[i], kind});
    open = true;
    open_kind = kind;
  };
  auto extend_span = [&](std::size_t i) {
    spans.back().end = i;
    spans.back().text += ' ';
    spans.back().text += tokens[i];
  };

  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string& s = states[i];
    if (s == "1") {
      begin_span(i, SpanKind::ingredient);
    } else if (s == "2") {
      if (open && open_kind != SpanKind::state3)
        extend_span(i);
      else
        begin_span(i, SpanKind::malformed_start);
    } else if (s == "3") {
      if (open && open_kind == SpanKind::state3)
        extend_span(i);
      else
        begin_span(i, SpanKind::state3);
    } else {
      open = false;
    }
  }
  return spans;
}

// ---------------------------------------------------------------------------
// End-to-end extraction

struct ExtractionDiagnostics {
  std::vector<bool> oov_mask;
  bool layer1_used_fallback = false;
  bool layer2_used_fallback = false;
};

struct Extraction {
  std::vector<std::string> tags;
  std::vector<std::string> states;
  std::vector<IngredientSpan> spans;
  ExtractionDiagnostics diagnostics;
};

// Layer-1 tags decoded without the emission weight (it belongs to layer 2).
inline DecodeResult predict_tags(const PipelineModel& pm, const std::vector<std::string>& tokens) {
  DecodeRequest req;
  req.observations = tokens;
  req.lambda = 1.0;
  req.space = pm.config.space;
  req.oov_policy = pm.config.oov_policy;
  if (std::holds_alternative<FirstOrderModel>(pm.layer1))
    return viterbi_first_order(std::get<FirstOrderModel>(pm.layer1), req);
  return viterbi_second_order(std::get<SecondOrderModel>(pm.layer1), req);
}

inline Extraction extract_ingredients(const PipelineModel& pm,
                                      const std::vector<std::string>& tokens,
                                      TagSource tag_source,
                                      const std::optional<std::vector<std::string>>& gold_tags =
                                          std::nullopt) {
  if (tokens.empty()) throw config_error("cannot extract from an empty sentence");

  Extraction out;
  if (tag_source == TagSource::oracle) {
    if (!gold_tags) throw config_error("oracle tag source requires gold tags");
    if (gold_tags->size() != tokens.size())
      throw config_error("gold tags length does not match token count");
    out.tags = *gold_tags;
  } else {
    DecodeResult l1 = predict_tags(pm, tokens);
    out.tags = l1.states;
    out.diagnostics.layer1_used_fallback = l1.used_fallback;
  }

  DecodeRequest req;
  req.observations = tokens;
  req.tags = out.tags;
  req.lambda = pm.config.lambda;
  req.space = pm.config.space;
  req.oov_policy = pm.config.oov_policy;
  req.lambda_on_oov = pm.config.lambda_on_oov;
  DecodeResult l2 = req.space == Space::log_space
                        ? viterbi_feature_conditioned_log(pm.layer2, req)
                        : viterbi_feature_conditioned(pm.layer2, req);

  out.states = l2.states;
  out.spans = states_to_spans(tokens, out.states);
  out.diagnostics.oov_mask = l2.oov_mask;
  out.diagnostics.layer2_used_fallback = l2.used_fallback;
  return out;
}

inline Extraction extract_ingredients(const PipelineModel& pm,
                                      const std::vector<std::string>& tokens) {
  return extract_ingredients(pm, tokens, pm.config.tag_source);
}

}  // namespace seqtag
