#include <catch2/catch_amalgamated.hpp>

#include "seqtag/estimate.hpp"
#include "support.hpp"

using namespace seqtag;

namespace {

const char* kMini = "2\tB\t0\nالبرتقال\tC\t1\nأو\tM\t0\nالاكليل\tC\t1\n";

double emit_at(const FirstOrderModel& m, const std::string& state, const std::string& word) {
  return m.emit(static_cast<std::size_t>(m.state_index(state)),
                static_cast<std::size_t>(m.lexicon.index_of(word)));
}

bool row_ok(double sum) { return std::abs(sum - 1.0) <= 1e-9 || sum == 0.0; }

}  // namespace

TEST_CASE("first-order estimation reproduces the mini-corpus word table") {
  Corpus mini = parse_corpus(kMini);
  FirstOrderModel m = estimate_first_order(mini, Field::token, Field::pos_label);
  REQUIRE(m.state_set == std::vector<std::string>{"B", "C", "M"});
  REQUIRE(m.lexicon.size() == 4);
  REQUIRE(emit_at(m, "C", "البرتقال") == 0.5);
  REQUIRE(emit_at(m, "C", "الاكليل") == 0.5);
  REQUIRE(emit_at(m, "B", "2") == 1.0);
  REQUIRE(emit_at(m, "M", "أو") == 1.0);
  REQUIRE(m.pi[0] == 1.0);  // B starts the only sentence
  // transitions: B->C, C->M, M->C (the final C ends the sentence)
  REQUIRE(m.trans(0, 1) == 1.0);
  REQUIRE(m.trans(1, 2) == 1.0);
  REQUIRE(m.trans(1, 1) == 0.0);
  REQUIRE(m.trans(2, 1) == 1.0);
}

TEST_CASE("pi is a point mass when every sentence starts with one state") {
  Corpus c = parse_corpus("a\tD\t1\nb\tX\t0\n\nq\tD\t1\n\nz\tD\t1\nw\tY\t0\n");
  FirstOrderModel m = estimate_first_order(c, Field::token, Field::pos_label);
  REQUIRE(m.pi[static_cast<std::size_t>(m.state_index("D"))] == 1.0);
  REQUIRE(m.pi[static_cast<std::size_t>(m.state_index("X"))] == 0.0);
  REQUIRE(m.pi[static_cast<std::size_t>(m.state_index("Y"))] == 0.0);
}

TEST_CASE("first-order transitions match a hand count on a 3-sentence corpus") {
  // ing_state bigrams: s1: 0->1, 1->1; s2: 1->0, 0->1; s3: 1->1, 1->0.
  Corpus c = parse_corpus(
      "a\tX\t0\nb\tX\t1\nc\tX\t1\n\n"
      "d\tX\t1\ne\tX\t0\nf\tX\t1\n\n"
      "g\tX\t1\nh\tX\t1\ni\tX\t0\n");
  FirstOrderModel m = estimate_first_order(c, Field::token, Field::ing_state);
  std::size_t s0 = static_cast<std::size_t>(m.state_index("0"));
  std::size_t s1 = static_cast<std::size_t>(m.state_index("1"));
  // from 0: two transitions, both to 1; from 1: four transitions, 2->1, 2->0.
  REQUIRE(m.trans(s0, s1) == 1.0);
  REQUIRE(m.trans(s0, s0) == 0.0);
  REQUIRE(m.trans(s1, s1) == 0.5);
  REQUIRE(m.trans(s1, s0) == 0.5);
  REQUIRE(m.pi[s0] == Catch::Approx(1.0 / 3).margin(1e-12));
  REQUIRE(m.pi[s1] == Catch::Approx(2.0 / 3).margin(1e-12));
}

TEST_CASE("single-token sentences contribute no transitions") {
  Corpus c = parse_corpus("a\tX\t0\n\nb\tY\t1\n");
  FirstOrderModel m = estimate_first_order(c, Field::token, Field::ing_state);
  for (std::size_t i = 0; i < m.num_states(); ++i)
    for (std::size_t j = 0; j < m.num_states(); ++j) REQUIRE(m.trans(i, j) == 0.0);
}

TEST_CASE("estimation requires a nonempty corpus and distinct fields") {
  Corpus c = parse_corpus("a\tX\t0\n");
  Corpus empty;
  REQUIRE_THROWS_AS(estimate_first_order(empty, Field::token, Field::ing_state), config_error);
  REQUIRE_THROWS_AS(estimate_first_order(c, Field::ing_state, Field::ing_state), config_error);
  REQUIRE_THROWS_AS(estimate_second_order(empty, Field::token, Field::ing_state), config_error);
  REQUIRE_THROWS_AS(estimate_feature_conditioned(empty), config_error);
}

TEST_CASE("second-order trigram counts on a repeating chain") {
  Corpus c = parse_corpus("a\tX\t1\nb\tX\t1\nc\tX\t1\nd\tX\t1\n");
  SecondOrderModel m = estimate_second_order(c, Field::token, Field::ing_state);
  std::size_t s = static_cast<std::size_t>(m.state_index("1"));
  REQUIRE(m.trans3(s, s, s) == 1.0);
}

TEST_CASE("second-order counts equal independent triple counting") {
  Rng rng(21);
  Corpus c = testsupport::random_corpus(rng, {4, 3, 8, 4, 6});
  SecondOrderModel m = estimate_second_order(c, Field::token, Field::ing_state);

  // Independent recount straight off the sentences.
  std::size_t n = m.state_set.size();
  Grid3<long long> triples(n, n, n);
  Grid3<long long> pairs_w(n, n, m.lexicon.size());
  for (const auto& s : c.sentences) {
    for (std::size_t r = 2; r < s.size(); ++r)
      triples(static_cast<std::size_t>(m.state_index(s.ing_states[r - 2])),
              static_cast<std::size_t>(m.state_index(s.ing_states[r - 1])),
              static_cast<std::size_t>(m.state_index(s.ing_states[r]))) += 1;
    for (std::size_t r = 1; r < s.size(); ++r)
      pairs_w(static_cast<std::size_t>(m.state_index(s.ing_states[r - 1])),
              static_cast<std::size_t>(m.state_index(s.ing_states[r])),
              static_cast<std::size_t>(m.lexicon.index_of(s.tokens[r]))) += 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long row = 0;
      for (std::size_t k = 0; k < n; ++k) row += triples(i, j, k);
      for (std::size_t k = 0; k < n; ++k) {
        REQUIRE(m.trans3_count(i, j, k) == triples(i, j, k));
        double expect = row == 0 ? 0.0 : static_cast<double>(triples(i, j, k)) / row;
        REQUIRE(m.trans3(i, j, k) == expect);
      }
      for (std::size_t w = 0; w < m.lexicon.size(); ++w)
        REQUIRE(m.emit2_count(i, j, w) == pairs_w(i, j, w));
    }
}

TEST_CASE("unseen state pairs give all-zero emission rows") {
  // States 0 and 1 never adjacent in either order except 0->1.
  Corpus c = parse_corpus("a\tX\t0\nb\tX\t1\n");
  SecondOrderModel m = estimate_second_order(c, Field::token, Field::ing_state);
  std::size_t s0 = static_cast<std::size_t>(m.state_index("0"));
  std::size_t s1 = static_cast<std::size_t>(m.state_index("1"));
  REQUIRE(m.emit2.row_sum(s1, s0) == 0.0);
  REQUIRE(m.emit2.row_sum(s0, s0) == 0.0);
  REQUIRE(m.emit2.row_sum(s0, s1) == 1.0);
}

TEST_CASE("feature-conditioned tables from the example sentence") {
  Corpus t1 = load_corpus(std::string(DATA_DIR) + "/table1.tsv");
  FeatureConditionedModel m = estimate_feature_conditioned(t1);
  std::size_t f = static_cast<std::size_t>(m.tag_index("F"));
  std::size_t e = static_cast<std::size_t>(m.tag_index("E"));
  std::size_t s1 = static_cast<std::size_t>(m.state_index("1"));
  std::size_t s2 = static_cast<std::size_t>(m.state_index("2"));
  REQUIRE(m.emit_f(f, s2, static_cast<std::size_t>(m.lexicon.index_of("اسود"))) == 1.0);
  REQUIRE(m.trans_f(e, s1, s2) == 1.0);
  REQUIRE(m.trans_f(e, s1, s1) == 0.0);
}

TEST_CASE("feature-conditioned transitions on an all-zero-state corpus") {
  Corpus c = parse_corpus("a\tX\t0\nb\tY\t0\nc\tX\t0\n\nd\tY\t0\ne\tX\t0\n");
  FeatureConditionedModel m = estimate_feature_conditioned(c);
  std::size_t s0 = static_cast<std::size_t>(m.state_index("0"));
  for (std::size_t t = 0; t < m.num_tags(); ++t) {
    double row = m.trans_f.row_sum(t, s0);
    if (row > 0.0) REQUIRE(m.trans_f(t, s0, s0) == 1.0);
  }
}

TEST_CASE("prefix table aggregates the mini-corpus exactly") {
  Corpus mini = parse_corpus(kMini);
  FirstOrderModel m = estimate_first_order(mini, Field::token, Field::pos_label);
  const auto& pt = m.prefix_emit;
  REQUIRE(pt.prefixes == std::vector<std::string>{"2", "ال", "أو"});
  auto at = [&](const std::string& state, const std::string& prefix) {
    return pt.table(static_cast<std::size_t>(m.state_index(state)),
                    static_cast<std::size_t>(m.lexicon.prefix_id_of(prefix)));
  };
  REQUIRE(at("C", "ال") == 1.0);
  REQUIRE(at("B", "2") == 1.0);
  REQUIRE(at("M", "أو") == 1.0);
  REQUIRE(at("C", "2") == 0.0);
  REQUIRE(at("B", "ال") == 0.0);
}

TEST_CASE("prefix table collapses to row sums when all words share a prefix") {
  Corpus c = parse_corpus("شاي\tX\t0\nشاهي\tY\t1\nشام\tX\t0\n");
  FirstOrderModel m = estimate_first_order(c, Field::token, Field::pos_label);
  REQUIRE(m.lexicon.prefixes.size() == 1);
  for (std::size_t j = 0; j < m.num_states(); ++j)
    REQUIRE(m.prefix_emit.table(j, 0) == m.emit.row_sum(j));
}

TEST_CASE("trained distributions are normalized or exactly zero") {
  Rng rng(31);
  for (int iter = 0; iter < 30; ++iter) {
    Corpus c = testsupport::random_corpus(rng);
    FirstOrderModel f = estimate_first_order(c, Field::token, Field::ing_state);
    double pi_sum = 0;
    for (double p : f.pi) pi_sum += p;
    REQUIRE(std::abs(pi_sum - 1.0) <= 1e-9);
    for (std::size_t i = 0; i < f.num_states(); ++i) {
      REQUIRE(row_ok(f.trans.row_sum(i)));
      REQUIRE(row_ok(f.emit.row_sum(i)));
    }
    SecondOrderModel s = estimate_second_order(c, Field::token, Field::ing_state);
    for (std::size_t i = 0; i < s.num_states(); ++i)
      for (std::size_t j = 0; j < s.num_states(); ++j) {
        REQUIRE(row_ok(s.trans3.row_sum(i, j)));
        REQUIRE(row_ok(s.emit2.row_sum(i, j)));
      }
    for (std::size_t j = 0; j < s.num_states(); ++j) {
      REQUIRE(row_ok(s.emit1.row_sum(j)));
      REQUIRE(row_ok(s.trans2.row_sum(j)));
    }
    FeatureConditionedModel fc = estimate_feature_conditioned(c);
    for (std::size_t t = 0; t < fc.num_tags(); ++t)
      for (std::size_t j = 0; j < fc.num_states(); ++j) {
        REQUIRE(row_ok(fc.trans_f.row_sum(t, j)));
        REQUIRE(row_ok(fc.emit_f.row_sum(t, j)));
      }
  }
}

TEST_CASE("prefix aggregation preserves row mass for all families") {
  Rng rng(37);
  for (int iter = 0; iter < 20; ++iter) {
    Corpus c = testsupport::random_corpus(rng);
    FirstOrderModel f = estimate_first_order(c, Field::token, Field::ing_state);
    for (std::size_t j = 0; j < f.num_states(); ++j)
      REQUIRE(std::abs(f.prefix_emit.table.row_sum(j) - f.emit.row_sum(j)) <= 1e-9);
    SecondOrderModel s = estimate_second_order(c, Field::token, Field::ing_state);
    for (std::size_t i = 0; i < s.num_states(); ++i)
      for (std::size_t j = 0; j < s.num_states(); ++j)
        REQUIRE(std::abs(s.prefix_emit2.table.row_sum(i, j) - s.emit2.row_sum(i, j)) <= 1e-9);
    FeatureConditionedModel fc = estimate_feature_conditioned(c);
    for (std::size_t t = 0; t < fc.num_tags(); ++t)
      for (std::size_t j = 0; j < fc.num_states(); ++j)
        REQUIRE(std::abs(fc.prefix_emit_f.table.row_sum(t, j) - fc.emit_f.row_sum(t, j)) <= 1e-9);
  }
}

TEST_CASE("estimation is invariant to sentence order up to symbol lookup") {
  Rng rng(41);
  Corpus c = testsupport::random_corpus(rng);
  Corpus shuffled = c;
  rng.shuffle(shuffled.sentences);
  shuffled = make_corpus(shuffled.sentences, c.source);

  FeatureConditionedModel a = estimate_feature_conditioned(c);
  FeatureConditionedModel b = estimate_feature_conditioned(shuffled);
  for (const auto& tag : a.feature_tagset)
    for (const auto& sj : a.state_set)
      for (const auto& w : a.lexicon.words) {
        double va = a.emit_f(static_cast<std::size_t>(a.tag_index(tag)),
                             static_cast<std::size_t>(a.state_index(sj)),
                             static_cast<std::size_t>(a.lexicon.index_of(w)));
        double vb = b.emit_f(static_cast<std::size_t>(b.tag_index(tag)),
                             static_cast<std::size_t>(b.state_index(sj)),
                             static_cast<std::size_t>(b.lexicon.index_of(w)));
        REQUIRE(va == vb);
        for (const auto& sk : a.state_set) {
          double ta = a.trans_f(static_cast<std::size_t>(a.tag_index(tag)),
                                static_cast<std::size_t>(a.state_index(sj)),
                                static_cast<std::size_t>(a.state_index(sk)));
          double tb = b.trans_f(static_cast<std::size_t>(b.tag_index(tag)),
                                static_cast<std::size_t>(b.state_index(sj)),
                                static_cast<std::size_t>(b.state_index(sk)));
          REQUIRE(ta == tb);
        }
      }
}

TEST_CASE("one-hot emissions when each word has a single state") {
  Corpus c = parse_corpus("a\tX\t0\nb\tY\t1\n\na\tX\t0\nc\tZ\t3\n");
  FirstOrderModel m = estimate_first_order(c, Field::token, Field::ing_state);
  for (std::size_t j = 0; j < m.num_states(); ++j)
    for (std::size_t w = 0; w < m.lexicon.size(); ++w) {
      double v = m.emit(j, w);
      REQUIRE((v == 0.0 || v == 1.0));
    }
  std::size_t s0 = static_cast<std::size_t>(m.state_index("0"));
  REQUIRE(m.emit(s0, static_cast<std::size_t>(m.lexicon.index_of("a"))) == 1.0);
}

TEST_CASE("additive smoothing fills unseen contexts and keeps normalization") {
  Corpus c = parse_corpus("a\tX\t0\nb\tY\t1\n");
  FirstOrderModel m = estimate_first_order(c, Field::token, Field::ing_state, 0.5);
  for (std::size_t i = 0; i < m.num_states(); ++i) {
    REQUIRE(std::abs(m.trans.row_sum(i) - 1.0) <= 1e-9);
    REQUIRE(std::abs(m.emit.row_sum(i) - 1.0) <= 1e-9);
    for (std::size_t j = 0; j < m.num_states(); ++j) REQUIRE(m.trans(i, j) > 0.0);
  }
}
