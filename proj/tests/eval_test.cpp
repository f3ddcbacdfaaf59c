#include <catch2/catch_amalgamated.hpp>

#include "seqtag/eval.hpp"
#include "support.hpp"

using namespace seqtag;

namespace {

std::vector<std::vector<bool>> known_masks(const std::vector<std::vector<std::string>>& gold) {
  std::vector<std::vector<bool>> m;
  for (const auto& s : gold) m.emplace_back(s.size(), false);
  return m;
}

}  // namespace

TEST_CASE("perfect predictions score 1 everywhere") {
  std::vector<std::vector<std::string>> gold = {{"0", "1", "2"}, {"0", "3"}};
  EvalReport rep = score(gold, gold, known_masks(gold));
  REQUIRE(rep.token_accuracy == 1.0);
  REQUIRE(rep.macro_f1 == 1.0);
  REQUIRE(*rep.macro_f1_positive == 1.0);
  for (const auto& [cls, f1] : rep.per_class_f1) REQUIRE(f1 == 1.0);
  REQUIRE_FALSE(rep.unknown_accuracy.has_value());
  REQUIRE(rep.oov_count == 0);
}

TEST_CASE("hand-computed per-class F1 example") {
  // class 1: tp=1 fp=0 fn=0 -> 1; class 2: tp=0 fn=1 -> 0;
  // class 0: tp=2 fp=1 fn=0 -> p=2/3 r=1 f1=0.8; macro (0.8+1+0)/3 = 0.6.
  std::vector<std::vector<std::string>> gold = {{"0", "1", "2", "0"}};
  std::vector<std::vector<std::string>> pred = {{"0", "1", "0", "0"}};
  EvalReport rep = score(gold, pred, known_masks(gold));
  REQUIRE(rep.token_accuracy == 0.75);
  REQUIRE(rep.per_class_f1.at("1") == 1.0);
  REQUIRE(rep.per_class_f1.at("2") == 0.0);
  REQUIRE(rep.per_class_f1.at("0") == Catch::Approx(0.8).margin(1e-12));
  REQUIRE(rep.macro_f1 == Catch::Approx(0.6).margin(1e-12));
  REQUIRE(*rep.macro_f1_positive == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("known/unknown split and the accuracy decomposition") {
  std::vector<std::vector<std::string>> gold = {{"0", "1", "1", "0"}};
  std::vector<std::vector<std::string>> pred = {{"0", "1", "0", "1"}};
  std::vector<std::vector<bool>> mask = {{false, true, true, false}};
  EvalReport rep = score(gold, pred, mask);
  REQUIRE(rep.oov_count == 2);
  REQUIRE(rep.oov_rate == 0.5);
  REQUIRE(*rep.known_accuracy == 0.5);
  REQUIRE(*rep.unknown_accuracy == 0.5);
  REQUIRE(rep.known_correct + rep.unknown_correct == rep.correct_tokens);

  Rng rng(9);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<std::vector<std::string>> g, p;
    std::vector<std::vector<bool>> m;
    std::size_t sentences = 1 + rng.below(5);
    for (std::size_t s = 0; s < sentences; ++s) {
      std::size_t len = 1 + rng.below(8);
      g.emplace_back();
      p.emplace_back();
      m.emplace_back();
      for (std::size_t i = 0; i < len; ++i) {
        g.back().push_back(std::to_string(rng.below(4)));
        p.back().push_back(std::to_string(rng.below(4)));
        m.back().push_back(rng.below(3) == 0);
      }
    }
    EvalReport r = score(g, p, m);
    REQUIRE(r.known_correct + r.unknown_correct == r.correct_tokens);
    REQUIRE(r.token_accuracy ==
            static_cast<double>(r.correct_tokens) / static_cast<double>(r.total_tokens));
    REQUIRE(r.oov_rate ==
            static_cast<double>(r.oov_count) / static_cast<double>(r.total_tokens));
  }
}

TEST_CASE("score rejects misaligned input") {
  std::vector<std::vector<std::string>> gold = {{"0", "1"}};
  std::vector<std::vector<std::string>> pred = {{"0"}};
  REQUIRE_THROWS_AS(score(gold, pred, known_masks(gold)), config_error);
  std::vector<std::vector<std::string>> pred2 = {{"0", "1"}, {"0"}};
  REQUIRE_THROWS_AS(score(gold, pred2, known_masks(gold)), config_error);
}

TEST_CASE("score is invariant to sentence order and boundaries") {
  std::vector<std::vector<std::string>> gold = {{"0", "1"}, {"2", "0", "3"}};
  std::vector<std::vector<std::string>> pred = {{"0", "0"}, {"2", "1", "3"}};
  EvalReport a = score(gold, pred, known_masks(gold));
  std::vector<std::vector<std::string>> gold2 = {{"2", "0", "3"}, {"0", "1"}};
  std::vector<std::vector<std::string>> pred2 = {{"2", "1", "3"}, {"0", "0"}};
  EvalReport b = score(gold2, pred2, known_masks(gold2));
  REQUIRE(a.token_accuracy == b.token_accuracy);
  REQUIRE(a.per_class_f1 == b.per_class_f1);
  // Flattened into a single "sentence" the token-level metric is unchanged.
  std::vector<std::vector<std::string>> gold3 = {{"0", "1", "2", "0", "3"}};
  std::vector<std::vector<std::string>> pred3 = {{"0", "0", "2", "1", "3"}};
  EvalReport c = score(gold3, pred3, known_masks(gold3));
  REQUIRE(a.token_accuracy == c.token_accuracy);
  REQUIRE(a.macro_f1 == c.macro_f1);
}

TEST_CASE("closed test on a one-sentence corpus memorizes perfectly") {
  Corpus t1 = load_corpus(std::string(DATA_DIR) + "/table1.tsv");
  EvalOptions opt;
  opt.family = EvalFamily::ie_oracle;
  EvalReport rep = closed_test(t1, opt);
  REQUIRE(rep.token_accuracy == 1.0);
  REQUIRE(rep.oov_count == 0);
}

TEST_CASE("cross-validation is deterministic and covers every sentence once") {
  Corpus c = load_corpus(std::string(DATA_DIR) + "/synthetic_corpus.tsv");
  EvalOptions opt;
  opt.family = EvalFamily::first_order;
  EvalReport a = cross_validate(c, 5, 42, opt);
  EvalReport b = cross_validate(c, 5, 42, opt);
  REQUIRE(a.folds.size() == 5);
  REQUIRE(a.token_accuracy == b.token_accuracy);
  for (std::size_t f = 0; f < 5; ++f) {
    REQUIRE(a.folds[f].token_accuracy == b.folds[f].token_accuracy);
    REQUIRE(a.folds[f].oov_count == b.folds[f].oov_count);
  }
  std::size_t tokens = 0;
  for (const auto& f : a.folds) tokens += f.total_tokens;
  REQUIRE(tokens == c.token_count());
  REQUIRE(a.oov_count > 0);  // held-out folds always contain unseen words

  EvalReport other = cross_validate(c, 5, 43, opt);
  REQUIRE(other.token_accuracy != a.token_accuracy);
}

TEST_CASE("cross-validation validates the fold count") {
  Corpus c = parse_corpus("a\tX\t0\nb\tY\t1\n\nc\tX\t0\n");
  EvalOptions opt;
  REQUIRE_THROWS_AS(cross_validate(c, 5, 1, opt), config_error);
  REQUIRE_THROWS_AS(cross_validate(c, 1, 1, opt), config_error);
}

TEST_CASE("lambda sweep produces one point per lambda and condition") {
  Corpus c = load_corpus(std::string(DATA_DIR) + "/synthetic_corpus.tsv");
  std::vector<SweepCondition> conds = {{SweepCondition::Kind::oracle, 1.0},
                                       {SweepCondition::Kind::predicted, 1.0},
                                       {SweepCondition::Kind::degraded, 0.678}};
  SweepCurve curve = lambda_sweep(c, {1, 2, 3, 4, 5, 6, 7, 8, 9}, conds, 7);
  REQUIRE(curve.points.size() == 27);
  for (std::size_t i = 0; i < 9; ++i) {
    REQUIRE(curve.points[i].condition == "oracle");
    REQUIRE(curve.points[i].lambda == static_cast<double>(i + 1));
  }
  REQUIRE(curve.points[9].condition == "predicted");
  REQUIRE(curve.points[18].condition == "degraded:0.6780");

  SweepCurve again = lambda_sweep(c, {1, 2, 3, 4, 5, 6, 7, 8, 9}, conds, 7);
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    REQUIRE(curve.points[i].accuracy == again.points[i].accuracy);
    REQUIRE(curve.points[i].f1 == again.points[i].f1);
  }
}

TEST_CASE("lambda sweep validates its lambda grid") {
  Corpus c = parse_corpus("a\tX\t0\nb\tY\t1\n");
  std::vector<SweepCondition> conds = {{SweepCondition::Kind::oracle, 1.0}};
  REQUIRE_THROWS_AS(lambda_sweep(c, {}, conds, 1), config_error);
  REQUIRE_THROWS_AS(lambda_sweep(c, {0.5, 2}, conds, 1), config_error);
  REQUIRE_THROWS_AS(lambda_sweep(c, {2, 2}, conds, 1), config_error);
  REQUIRE_THROWS_AS(lambda_sweep(c, {3, 2}, conds, 1), config_error);
}

TEST_CASE("fixture regressions: emission weight helps and OOV sits near a tenth") {
  Corpus c = load_corpus(std::string(DATA_DIR) + "/synthetic_corpus.tsv");
  SweepCurve curve =
      lambda_sweep(c, {1, 2, 3, 4}, {{SweepCondition::Kind::oracle, 1.0}}, 1);
  REQUIRE(curve.points[3].accuracy > curve.points[0].accuracy);  // lambda 4 beats lambda 1

  EvalOptions opt;
  opt.family = EvalFamily::first_order;
  EvalReport cv = cross_validate(c, 10, 1, opt);
  REQUIRE(cv.oov_rate > 0.05);
  REQUIRE(cv.oov_rate < 0.20);
}

TEST_CASE("a single-state corpus sweeps flat at accuracy 1") {
  Corpus c = parse_corpus("a\tX\t0\nb\tY\t0\n\nc\tX\t0\nd\tY\t0\n");
  std::vector<SweepCondition> conds = {{SweepCondition::Kind::oracle, 1.0}};
  SweepCurve curve = lambda_sweep(c, {1, 2, 3, 4}, conds, 1);
  for (const auto& p : curve.points) REQUIRE(p.accuracy == 1.0);
}

TEST_CASE("degraded tags hit the requested accuracy exactly") {
  Corpus c = load_corpus(std::string(DATA_DIR) + "/synthetic_corpus.tsv");
  Rng rng(11);
  auto tags = degrade_tags(c, 0.9, rng);
  std::size_t total = 0, wrong = 0;
  for (std::size_t s = 0; s < c.sentences.size(); ++s)
    for (std::size_t i = 0; i < c.sentences[s].size(); ++i) {
      ++total;
      if (tags[s][i] != c.sentences[s].pos_labels[i]) ++wrong;
    }
  REQUIRE(wrong == static_cast<std::size_t>(std::llround(0.1 * total)));

  Rng rng2(11);
  auto tags2 = degrade_tags(c, 0.9, rng2);
  REQUIRE(tags == tags2);  // seeded

  Rng rng3(11);
  auto clean = degrade_tags(c, 1.0, rng3);
  for (std::size_t s = 0; s < c.sentences.size(); ++s)
    REQUIRE(clean[s] == c.sentences[s].pos_labels);
}

TEST_CASE("unreachable degraded targets are rejected") {
  Corpus c = load_corpus(std::string(DATA_DIR) + "/synthetic_corpus.tsv");
  Rng rng(1);
  REQUIRE_THROWS_AS(degrade_tags(c, 0.0, rng), config_error);
  REQUIRE_THROWS_AS(degrade_tags(c, -0.5, rng), config_error);
  REQUIRE_THROWS_AS(degrade_tags(c, 1.5, rng), config_error);
  Corpus single = parse_corpus("a\tX\t0\nb\tX\t1\n");
  REQUIRE_THROWS_AS(degrade_tags(single, 0.5, rng), config_error);
}

TEST_CASE("csv outputs are fixed-format") {
  Corpus c = load_corpus(std::string(DATA_DIR) + "/synthetic_corpus.tsv");
  EvalOptions opt;
  opt.family = EvalFamily::first_order;
  EvalReport rep = cross_validate(c, 5, 1, opt);
  std::string csv = crossval_csv(rep, false);
  REQUIRE(csv.rfind("fold,accuracy,f1,accuracy_unknown,accuracy_known,unknown_count,unknown_pct\n",
                    0) == 0);
  std::size_t rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  REQUIRE(rows == 1 + 5 + 1);  // header + folds + Avg
  REQUIRE(csv.find("Avg,") != std::string::npos);

  EvalReport closed = closed_test(c, opt);
  std::string ct = closed_test_csv({{"first_order", closed}}, c.state_set);
  REQUIRE(ct.rfind("model,accuracy,f1,f1_positive", 0) == 0);
  // closed test has no unknown tokens; the csv keeps 4-decimal fractions
  REQUIRE(ct.find("first_order,0.") != std::string::npos);

  SweepCurve curve = lambda_sweep(c, {1, 2}, {{SweepCondition::Kind::oracle, 1.0}}, 1);
  std::string sw = sweep_csv(curve);
  REQUIRE(sw.rfind("lambda,condition,accuracy,f1\n", 0) == 0);
  REQUIRE(sw.find("1.0000,oracle,0.") != std::string::npos);
}
