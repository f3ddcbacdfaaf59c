#include <catch2/catch_amalgamated.hpp>

#include "seqtag/estimate.hpp"
#include "seqtag/model_io.hpp"
#include "seqtag/pipeline.hpp"
#include "support.hpp"

using namespace seqtag;
using reason = model_format_error::reason;

namespace {

template <typename ModelT>
void check_roundtrip(const ModelT& m) {
  std::string text = save_model(m);
  LoadedModel back = load_model(text);
  REQUIRE(std::holds_alternative<ModelT>(back));
  REQUIRE(std::get<ModelT>(back) == m);
  REQUIRE(save_model(std::get<ModelT>(back)) == text);  // stable bytes
}

reason load_reason(const std::string& text) {
  try {
    load_model(text);
  } catch (const model_format_error& e) {
    return e.why();
  }
  throw std::runtime_error("expected model_format_error");
}

}  // namespace

TEST_CASE("every model family round-trips bit-exactly") {
  Rng rng(77);
  for (int iter = 0; iter < 5; ++iter) {
    Corpus c = testsupport::random_corpus(rng);
    check_roundtrip(estimate_first_order(c, Field::token, Field::ing_state));
    check_roundtrip(estimate_first_order(c, Field::pos_label, Field::ing_state));
    check_roundtrip(estimate_second_order(c, Field::token, Field::ing_state));
    check_roundtrip(estimate_feature_conditioned(c));
    PipelineConfig cfg;
    cfg.lambda = 4.0 + iter;
    cfg.layer1_family = iter % 2 ? Layer1Family::second_order : Layer1Family::first_order;
    check_roundtrip(train_pipeline(c, cfg));
  }
}

TEST_CASE("the mini-corpus model file records the published dimensions") {
  Corpus mini = parse_corpus("2\tB\t0\nالبرتقال\tC\t1\nأو\tM\t0\nالاكليل\tC\t1\n");
  std::string text = save_model(estimate_first_order(mini, Field::token, Field::pos_label));
  REQUIRE(text.find("strs states 3\n") != std::string::npos);
  REQUIRE(text.find("strs words 4\n") != std::string::npos);
}

TEST_CASE("version problems are reported as version mismatches") {
  Rng rng(78);
  Corpus c = testsupport::random_corpus(rng);
  std::string text = save_model(estimate_first_order(c, Field::token, Field::ing_state));
  std::string bumped = text;
  bumped.replace(0, bumped.find('\n'), "seqtag-model 2");
  REQUIRE(load_reason(bumped) == reason::version_mismatch);
  REQUIRE(load_reason("something else entirely\n") == reason::version_mismatch);
}

TEST_CASE("truncated files are reported as truncated") {
  REQUIRE(load_reason("") == reason::truncated);
  Rng rng(79);
  Corpus c = testsupport::random_corpus(rng);
  std::string text = save_model(estimate_first_order(c, Field::token, Field::ing_state));
  // Drop the last few lines, cutting at a line boundary.
  std::size_t cut = text.size() - 1;
  for (int drops = 0; drops < 4; ++drops) cut = text.rfind('\n', cut - 1);
  REQUIRE(load_reason(text.substr(0, cut + 1)) == reason::truncated);
}

TEST_CASE("an edited dimension header is a dimension mismatch") {
  Rng rng(80);
  Corpus c = testsupport::random_corpus(rng);
  std::string text = save_model(estimate_first_order(c, Field::token, Field::ing_state));
  std::size_t pos = text.find("strs states ");
  std::size_t eol = text.find('\n', pos);
  std::string edited = text.substr(0, pos) + "strs states 1" + text.substr(eol);
  REQUIRE(load_reason(edited) == reason::dimension_mismatch);

  // A numeric table row with the wrong entry count is also a mismatch.
  pos = text.find("mat trans ");
  eol = text.find('\n', pos);
  std::size_t row_end = text.find('\n', eol + 1);
  std::string edited2 = text.substr(0, eol + 1) + "0.5" + text.substr(row_end);
  REQUIRE(load_reason(edited2) == reason::dimension_mismatch);
}

TEST_CASE("corrupted numeric cells are bad values") {
  Rng rng(81);
  Corpus c = testsupport::random_corpus(rng);
  std::string text = save_model(estimate_first_order(c, Field::token, Field::ing_state));
  std::size_t pos = text.find("vec pi ");
  std::size_t eol = text.find('\n', pos);
  std::size_t row_end = text.find('\n', eol + 1);
  std::string row = text.substr(eol + 1, row_end - eol - 1);
  std::size_t sp = row.find(' ');
  std::string edited =
      text.substr(0, eol + 1) + "oops" + row.substr(sp == std::string::npos ? row.size() : sp) +
      text.substr(row_end);
  REQUIRE(load_reason(edited) == reason::bad_value);
}

TEST_CASE("pipeline files keep the configuration") {
  Rng rng(82);
  Corpus c = testsupport::random_corpus(rng);
  PipelineConfig cfg;
  cfg.lambda = 7.25;
  cfg.lambda_on_oov = true;
  cfg.tag_source = TagSource::oracle;
  PipelineModel pm = train_pipeline(c, cfg);
  LoadedModel back = load_model(save_model(pm));
  const PipelineModel& loaded = std::get<PipelineModel>(back);
  REQUIRE(loaded.config == cfg);
  REQUIRE(loaded == pm);
}
