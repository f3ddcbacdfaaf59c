#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqtag/errors.hpp"

namespace seqtag {

// Token-level scores. The headline f1 is the unweighted macro mean over the
// classes present in gold; the positive variant restricts to states 1/2/3.
// Metrics whose denominator is empty (e.g. unknown-word accuracy with no OOV
// tokens) are reported as absent, never as 0 or 1.
struct EvalReport {
  double token_accuracy = 0.0;
  std::map<std::string, double> per_class_f1;
  double macro_f1 = 0.0;
  std::optional<double> macro_f1_positive;
  std::optional<double> known_accuracy;
  std::optional<double> unknown_accuracy;
  std::size_t oov_count = 0;
  double oov_rate = 0.0;

  std::size_t total_tokens = 0;
  std::size_t correct_tokens = 0;
  std::size_t known_correct = 0;
  std::size_t unknown_correct = 0;

  // Filled for the two-layer extractor with predicted tags.
  std::optional<double> layer1_accuracy;
  std::optional<double> layer1_f1;

  // Cross-validation: one report per fold; the enclosing report holds the
  // fold averages (count fields hold totals).
  std::vector<EvalReport> folds;
};

inline EvalReport score(const std::vector<std::vector<std::string>>& gold,
                        const std::vector<std::vector<std::string>>& predicted,
                        const std::vector<std::vector<bool>>& oov_masks) {
  if (gold.size() != predicted.size() || gold.size() != oov_masks.size())
    throw config_error("gold/predicted/oov sentence counts differ");

  EvalReport rep;
  std::map<std::string, std::size_t> tp, fp, fn;
  std::size_t known_total = 0, unknown_total = 0;

  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size() || gold[s].size() != oov_masks[s].size())
      throw config_error("gold/predicted length mismatch in sentence " + std::to_string(s));
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      const std::string& g = gold[s][i];
      const std::string& p = predicted[s][i];
      ++rep.total_tokens;
      bool correct = g == p;
      if (correct) {
        ++rep.correct_tokens;
        ++tp[g];
      } else {
        ++fn[g];
        ++fp[p];
      }
      if (oov_masks[s][i]) {
        ++unknown_total;
        if (correct) ++rep.unknown_correct;
      } else {
        ++known_total;
        if (correct) ++rep.known_correct;
      }
      tp.try_emplace(g, 0);  // gold classes appear even with zero true positives
    }
  }

  if (rep.total_tokens == 0) throw config_error("cannot score an empty prediction set");

  rep.token_accuracy = static_cast<double>(rep.correct_tokens) / rep.total_tokens;
  rep.oov_count = unknown_total;
  rep.oov_rate = static_cast<double>(unknown_total) / rep.total_tokens;
  if (known_total) rep.known_accuracy = static_cast<double>(rep.known_correct) / known_total;
  if (unknown_total)
    rep.unknown_accuracy = static_cast<double>(rep.unknown_correct) / unknown_total;

  double f1_sum = 0.0;
  double f1_pos_sum = 0.0;
  std::size_t pos_classes = 0;
  for (const auto& [cls, tp_count] : tp) {
    std::size_t fp_count = fp.count(cls) ? fp[cls] : 0;
    std::size_t fn_count = fn.count(cls) ? fn[cls] : 0;
    double denom = 2.0 * tp_count + fp_count + fn_count;
    double f1 = denom == 0.0 ? 0.0 : 2.0 * tp_count / denom;
    rep.per_class_f1[cls] = f1;
    f1_sum += f1;
    if (cls == "1" || cls == "2" || cls == "3") {
      f1_pos_sum += f1;
      ++pos_classes;
    }
  }
  rep.macro_f1 = f1_sum / static_cast<double>(rep.per_class_f1.size());
  if (pos_classes) rep.macro_f1_positive = f1_pos_sum / static_cast<double>(pos_classes);
  return rep;
}

}  // namespace seqtag
