// seqtag command line: train models, run the two-layer extractor, and drive
// the evaluation protocols (closed test, cross-validation, lambda sweep).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqtag/seqtag.hpp"

namespace fs = std::filesystem;
using namespace seqtag;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw io_error("error writing: " + path.string());
}

void write_run_config(const fs::path& out_dir,
                      const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string body;
  for (const auto& [k, v] : entries) body += k + '=' + v + '\n';
  write_file(out_dir / "run_config.txt", body);
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string opt4(const std::optional<double>& v) { return v ? fmt4(*v) : std::string("-"); }

// ---------------------------------------------------------------------------
// Input files for `extract`: either bare tokens (one per line) or full
// 3-column corpus lines; blank lines separate sentences, # lines are comments.

struct ExtractInput {
  std::vector<std::vector<std::string>> tokens;
  std::vector<std::vector<std::string>> gold_tags;    // empty unless 3-column input
  std::vector<std::vector<std::string>> gold_states;  // ditto
  bool three_column = false;
};

ExtractInput read_extract_input(const std::string& path) {
  std::string text = read_file(path);
  ExtractInput in;
  std::vector<std::string> toks, tags, states;
  std::size_t line_no = 0;
  int columns = 0;

  auto flush = [&] {
    if (toks.empty()) return;
    in.tokens.push_back(std::move(toks));
    if (columns == 3) {
      in.gold_tags.push_back(std::move(tags));
      in.gold_states.push_back(std::move(states));
    }
    toks = {};
    tags = {};
    states = {};
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    if (line.starts_with("#")) {
      // comment
    } else if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
    } else {
      std::vector<std::string> fields;
      std::size_t i = 0;
      for (;;) {
        std::size_t t = line.find('\t', i);
        fields.push_back(line.substr(i, t == std::string::npos ? t : t - i));
        if (t == std::string::npos) break;
        i = t + 1;
      }
      int cols = static_cast<int>(fields.size());
      if (cols != 1 && cols != 3)
        throw parse_error("expected 1 or 3 tab-separated fields", line_no);
      if (columns == 0) columns = cols;
      if (cols != columns) throw parse_error("mixed 1- and 3-column lines", line_no);
      if (fields[0].empty()) throw parse_error("empty token field", line_no);
      toks.push_back(fields[0]);
      if (cols == 3) {
        tags.push_back(fields[1]);
        states.push_back(fields[2]);
      }
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  flush();
  if (in.tokens.empty()) throw parse_error("no sentences in " + path);
  in.three_column = columns == 3;
  return in;
}

std::vector<std::vector<std::string>> read_tag_file(const std::string& path) {
  std::string text = read_file(path);
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with("#")) {
    } else if (line.find_first_not_of(" \t") == std::string::npos) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur = {};
    } else {
      cur.push_back(line);
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// ---------------------------------------------------------------------------
// Model summaries for `train`

template <typename T>
std::size_t zero_rows2(const Grid2<T>& g) {
  std::size_t z = 0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (g.row_sum(i) == T{}) ++z;
  return z;
}

template <typename T>
std::size_t zero_rows3(const Grid3<T>& g) {
  std::size_t z = 0;
  for (std::size_t i = 0; i < g.dim0(); ++i)
    for (std::size_t j = 0; j < g.dim1(); ++j)
      if (g.row_sum(i, j) == T{}) ++z;
  return z;
}

void print_summary(const FirstOrderModel& m) {
  std::cout << "first-order model: N=" << m.num_states() << " states, M=" << m.lexicon.size()
            << " words, P=" << m.lexicon.prefixes.size() << " prefixes\n"
            << "  zero rows: trans " << zero_rows2(m.trans) << "/" << m.num_states() << ", emit "
            << zero_rows2(m.emit) << "/" << m.num_states() << "\n";
}

void print_summary(const SecondOrderModel& m) {
  std::size_t nn = m.num_states() * m.num_states();
  std::cout << "second-order model: N=" << m.num_states() << " states, M=" << m.lexicon.size()
            << " words, P=" << m.lexicon.prefixes.size() << " prefixes\n"
            << "  zero rows: trans3 " << zero_rows3(m.trans3) << "/" << nn << ", emit2 "
            << zero_rows3(m.emit2) << "/" << nn << "\n";
}

void print_summary(const FeatureConditionedModel& m) {
  std::size_t kn = m.num_tags() * m.num_states();
  std::cout << "feature-conditioned model: N=" << m.num_states() << " states, K=" << m.num_tags()
            << " tags, M=" << m.lexicon.size() << " words, P=" << m.lexicon.prefixes.size()
            << " prefixes\n"
            << "  zero rows: trans_f " << zero_rows3(m.trans_f) << "/" << kn << ", emit_f "
            << zero_rows3(m.emit_f) << "/" << kn << "\n";
}

void print_summary(const PipelineModel& m) {
  std::cout << "pipeline model (layer 1 "
            << (m.config.layer1_family == Layer1Family::first_order ? "first" : "second")
            << "-order)\n";
  if (std::holds_alternative<FirstOrderModel>(m.layer1))
    print_summary(std::get<FirstOrderModel>(m.layer1));
  else
    print_summary(std::get<SecondOrderModel>(m.layer1));
  print_summary(m.layer2);
}

void print_report(const std::string& label, const EvalReport& rep) {
  std::cout << label << ": accuracy " << fmt4(rep.token_accuracy) << ", f1 " << fmt4(rep.macro_f1)
            << ", f1_positive " << opt4(rep.macro_f1_positive) << ", known " <<
      opt4(rep.known_accuracy) << ", unknown " << opt4(rep.unknown_accuracy) << ", oov "
            << rep.oov_count << " (" << fmt4(rep.oov_rate) << ")";
  if (rep.layer1_accuracy)
    std::cout << ", layer1 accuracy " << fmt4(*rep.layer1_accuracy) << ", layer1 f1 "
              << opt4(rep.layer1_f1);
  std::cout << "\n";
}

// Shared flag bundles --------------------------------------------------------

struct FamilyFlags {
  std::string family = "first";
  std::string obs = "tokens";
  std::string state = "ing";
  double lambda = 4.0;
  std::string space = "log";
  bool lambda_on_oov = false;
  std::string layer1 = "first";
  double epsilon = 0.0;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f, bool with_state) {
  cmd->add_option("--family", f.family, "Model family")
      ->check(CLI::IsMember({"first", "second", "feature", "pipeline"}))
      ->capture_default_str();
  cmd->add_option("--obs", f.obs, "Observation column for first/second families")
      ->check(CLI::IsMember({"tokens", "tags"}))
      ->capture_default_str();
  if (with_state)
    cmd->add_option("--state", f.state, "Hidden state column for first/second families")
        ->check(CLI::IsMember({"pos", "ing"}))
        ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "Emission weight for the tag-conditioned layer")
      ->capture_default_str();
  cmd->add_option("--space", f.space, "Decoding space")
      ->check(CLI::IsMember({"log", "prob"}))
      ->capture_default_str();
  cmd->add_flag("--lambda-on-oov", f.lambda_on_oov,
                "Apply the emission weight to prefix-table emissions too");
  cmd->add_option("--layer1", f.layer1, "Layer-1 family for the pipeline")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon, "Additive smoothing (0 = pure relative frequency)")
      ->capture_default_str();
}

Field obs_field(const FamilyFlags& f) {
  return f.obs == "tokens" ? Field::token : Field::pos_label;
}

EvalOptions eval_options(const FamilyFlags& f) {
  EvalOptions opt;
  if (f.family == "first")
    opt.family = EvalFamily::first_order;
  else if (f.family == "second")
    opt.family = EvalFamily::second_order;
  else if (f.family == "feature")
    opt.family = EvalFamily::ie_oracle;
  else
    opt.family = EvalFamily::ie_predicted;
  opt.obs_field = obs_field(f);
  opt.lambda = f.lambda;
  opt.space = f.space == "log" ? Space::log_space : Space::probability;
  opt.lambda_on_oov = f.lambda_on_oov;
  opt.layer1_family = f.layer1 == "first" ? Layer1Family::first_order : Layer1Family::second_order;
  opt.epsilon = f.epsilon;
  return opt;
}

std::vector<std::pair<std::string, std::string>> family_config_entries(const FamilyFlags& f) {
  return {{"family", f.family},
          {"obs", f.obs},
          {"state", f.state},
          {"lambda", fmt4(f.lambda)},
          {"space", f.space},
          {"lambda_on_oov", f.lambda_on_oov ? "1" : "0"},
          {"layer1", f.layer1},
          {"epsilon", fmt4(f.epsilon)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "seqtag: HMM sequence taggers and a two-layer ingredient extractor.\n"
      "Exit codes: 0 ok, 2 config, 3 io, 4 parse, 5 decode, 6 model format."};
  app.require_subcommand(1);

  // --- train ---
  auto* train = app.add_subcommand("train", "Estimate a model and save it");
  std::string train_corpus, train_out;
  FamilyFlags train_flags;
  std::string train_tag_source = "predicted";
  train->add_option("--corpus", train_corpus, "Training corpus file")->required();
  train->add_option("--out", train_out, "Output model file")->required();
  add_family_flags(train, train_flags, true);
  train->add_option("--tag-source", train_tag_source,
                    "Pipeline layer-2 feature source at extraction time")
      ->check(CLI::IsMember({"predicted", "oracle"}))
      ->capture_default_str();

  // --- extract ---
  auto* extract = app.add_subcommand("extract", "Run the extractor over a token file");
  std::string ex_model, ex_input, ex_tags = "predict", ex_out_dir = ".";
  double ex_lambda = -1.0;
  std::string ex_oov = "prefix";
  extract->add_option("--model", ex_model, "Pipeline model file")->required();
  extract->add_option("--input", ex_input, "Token file (1- or 3-column)")->required();
  extract->add_option("--tags", ex_tags,
                      "predict | oracle (3-column input) | oracle:<tag file>")
      ->capture_default_str();
  extract->add_option("--lambda", ex_lambda, "Override the model's emission weight");
  extract->add_option("--oov-policy", ex_oov, "Unknown-word handling")
      ->check(CLI::IsMember({"prefix", "error"}))
      ->capture_default_str();
  extract->add_option("--out-dir", ex_out_dir, "Output directory")->capture_default_str();

  // --- eval ---
  auto* eval = app.add_subcommand("eval", "Closed test: train and decode the same corpus");
  std::string eval_corpus, eval_out_dir = ".";
  FamilyFlags eval_flags;
  eval->add_option("--corpus", eval_corpus, "Corpus file")->required();
  add_family_flags(eval, eval_flags, false);
  eval->add_option("--out-dir", eval_out_dir, "Output directory")->capture_default_str();

  // --- crossval ---
  auto* crossval = app.add_subcommand("crossval", "Seeded k-fold cross-validation");
  std::string cv_corpus, cv_out_dir = ".";
  FamilyFlags cv_flags;
  std::size_t cv_folds = 10;
  std::uint64_t cv_seed = 1;
  crossval->add_option("--corpus", cv_corpus, "Corpus file")->required();
  add_family_flags(crossval, cv_flags, false);
  crossval->add_option("--folds", cv_folds, "Fold count")->capture_default_str();
  crossval->add_option("--seed", cv_seed, "Shuffle seed")->capture_default_str();
  crossval->add_option("--out-dir", cv_out_dir, "Output directory")->capture_default_str();

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "Closed-test accuracy per lambda and condition");
  std::string sw_corpus, sw_out_dir = ".", sw_conditions = "oracle,predicted";
  double sw_min = 1.0, sw_max = 9.0;
  std::uint64_t sw_seed = 1;
  FamilyFlags sw_flags;
  sweep->add_option("--corpus", sw_corpus, "Corpus file")->required();
  sweep->add_option("--lambda-min", sw_min, "First lambda")->capture_default_str();
  sweep->add_option("--lambda-max", sw_max, "Last lambda (step 1)")->capture_default_str();
  sweep->add_option("--conditions", sw_conditions,
                    "Comma list: oracle, predicted, degraded:<target accuracy>")
      ->capture_default_str();
  sweep->add_option("--seed", sw_seed, "Seed for degraded-tag sampling")->capture_default_str();
  sweep->add_option("--epsilon", sw_flags.epsilon, "Additive smoothing")->capture_default_str();
  sweep->add_flag("--lambda-on-oov", sw_flags.lambda_on_oov,
                  "Apply the emission weight to prefix-table emissions too");
  sweep->add_option("--out-dir", sw_out_dir, "Output directory")->capture_default_str();

  // --- stats ---
  auto* stats = app.add_subcommand("stats", "Corpus summary statistics");
  std::string st_corpus, st_against, st_out_dir = ".";
  stats->add_option("--corpus", st_corpus, "Corpus file")->required();
  stats->add_option("--against", st_against, "Report OOV rate against this corpus's lexicon");
  stats->add_option("--out-dir", st_out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(errc::config);
  }

  try {
    if (*train) {
      Corpus corpus = load_corpus(train_corpus);
      Field obs = obs_field(train_flags);
      Field state = train_flags.state == "pos" ? Field::pos_label : Field::ing_state;
      std::string serialized;
      if (train_flags.family == "first") {
        FirstOrderModel m = estimate_first_order(corpus, obs, state, train_flags.epsilon);
        print_summary(m);
        serialized = save_model(m);
      } else if (train_flags.family == "second") {
        SecondOrderModel m = estimate_second_order(corpus, obs, state, train_flags.epsilon);
        print_summary(m);
        serialized = save_model(m);
      } else if (train_flags.family == "feature") {
        FeatureConditionedModel m = estimate_feature_conditioned(corpus, train_flags.epsilon);
        print_summary(m);
        serialized = save_model(m);
      } else {
        PipelineConfig cfg;
        cfg.lambda = train_flags.lambda;
        cfg.space = train_flags.space == "log" ? Space::log_space : Space::probability;
        cfg.lambda_on_oov = train_flags.lambda_on_oov;
        cfg.tag_source =
            train_tag_source == "predicted" ? TagSource::predicted : TagSource::oracle;
        cfg.layer1_family = train_flags.layer1 == "first" ? Layer1Family::first_order
                                                          : Layer1Family::second_order;
        cfg.epsilon = train_flags.epsilon;
        PipelineModel m = train_pipeline(corpus, cfg);
        print_summary(m);
        serialized = save_model(m);
      }
      write_file(train_out, serialized);
      fs::path out_dir = fs::path(train_out).has_parent_path()
                             ? fs::path(train_out).parent_path()
                             : fs::path(".");
      auto entries = family_config_entries(train_flags);
      entries.insert(entries.begin(), {{"command", "train"}, {"corpus", train_corpus}});
      entries.push_back({"tag_source", train_tag_source});
      entries.push_back({"out", train_out});
      write_run_config(out_dir, entries);
      std::cout << "wrote " << train_out << "\n";
    }

    if (*extract) {
      LoadedModel lm = load_model(read_file(ex_model));
      if (!std::holds_alternative<PipelineModel>(lm))
        throw config_error("extract needs a pipeline model, got family " +
                           std::string(loaded_family_name(lm)));
      PipelineModel pm = std::get<PipelineModel>(std::move(lm));
      if (ex_lambda >= 0.0) pm.config.lambda = ex_lambda;
      pm.config.oov_policy = ex_oov == "prefix" ? OovPolicy::prefix_table : OovPolicy::error;

      ExtractInput in = read_extract_input(ex_input);
      std::optional<std::vector<std::vector<std::string>>> oracle_tags;
      if (ex_tags == "oracle") {
        if (!in.three_column)
          throw config_error("--tags oracle needs a 3-column input file (or oracle:<path>)");
        oracle_tags = in.gold_tags;
      } else if (ex_tags.starts_with("oracle:")) {
        oracle_tags = read_tag_file(ex_tags.substr(7));
        if (oracle_tags->size() != in.tokens.size())
          throw config_error("tag file sentence count does not match the input");
      } else if (ex_tags != "predict") {
        throw config_error("--tags must be predict, oracle or oracle:<path>");
      }

      std::string tagged;
      std::string spans_csv = "sentence,start,end,text,flags\n";
      for (std::size_t s = 0; s < in.tokens.size(); ++s) {
        Extraction ex;
        if (oracle_tags) {
          if ((*oracle_tags)[s].size() != in.tokens[s].size())
            throw config_error("oracle tag count mismatch in sentence " + std::to_string(s));
          ex = extract_ingredients(pm, in.tokens[s], TagSource::oracle, (*oracle_tags)[s]);
        } else {
          ex = extract_ingredients(pm, in.tokens[s], TagSource::predicted);
        }
        for (std::size_t i = 0; i < in.tokens[s].size(); ++i) {
          tagged += in.tokens[s][i];
          if (in.three_column) {
            tagged += '\t';
            tagged += in.gold_tags[s][i];
            tagged += '\t';
            tagged += in.gold_states[s][i];
          }
          tagged += '\t';
          tagged += ex.tags[i];
          tagged += '\t';
          tagged += ex.states[i];
          tagged += '\n';
        }
        if (s + 1 < in.tokens.size()) tagged += '\n';
        for (const IngredientSpan& span : ex.spans)
          spans_csv += std::to_string(s) + ',' + std::to_string(span.start) + ',' +
                       std::to_string(span.end) + ',' + csv_quote(span.text) + ',' +
                       span_kind_name(span.kind) + '\n';
      }
      fs::path dir(ex_out_dir);
      write_file(dir / "tagged.tsv", tagged);
      write_file(dir / "spans.csv", spans_csv);
      write_run_config(dir, {{"command", "extract"},
                             {"model", ex_model},
                             {"input", ex_input},
                             {"tags", ex_tags},
                             {"lambda", fmt4(pm.config.lambda)},
                             {"oov_policy", ex_oov},
                             {"out_dir", ex_out_dir}});
      std::cout << "wrote " << (dir / "tagged.tsv").string() << " and "
                << (dir / "spans.csv").string() << "\n";
    }

    if (*eval) {
      Corpus corpus = load_corpus(eval_corpus);
      EvalOptions opt = eval_options(eval_flags);
      EvalReport rep = closed_test(corpus, opt);
      print_report("closed test " + eval_flags.family, rep);
      std::vector<std::pair<std::string, EvalReport>> rows{{eval_flags.family, rep}};
      fs::path dir(eval_out_dir);
      write_file(dir / "closed_test.csv", closed_test_csv(rows, corpus.state_set));
      auto entries = family_config_entries(eval_flags);
      entries.insert(entries.begin(), {{"command", "eval"}, {"corpus", eval_corpus}});
      entries.push_back({"out_dir", eval_out_dir});
      write_run_config(dir, entries);
    }

    if (*crossval) {
      Corpus corpus = load_corpus(cv_corpus);
      EvalOptions opt = eval_options(cv_flags);
      EvalReport rep = cross_validate(corpus, cv_folds, cv_seed, opt);
      for (std::size_t i = 0; i < rep.folds.size(); ++i)
        print_report("fold " + std::to_string(i), rep.folds[i]);
      print_report("Avg", rep);
      fs::path dir(cv_out_dir);
      write_file(dir / "crossval.csv",
                 crossval_csv(rep, opt.family == EvalFamily::ie_predicted));
      auto entries = family_config_entries(cv_flags);
      entries.insert(entries.begin(), {{"command", "crossval"}, {"corpus", cv_corpus}});
      entries.push_back({"folds", std::to_string(cv_folds)});
      entries.push_back({"seed", std::to_string(cv_seed)});
      entries.push_back({"out_dir", cv_out_dir});
      write_run_config(dir, entries);
    }

    if (*sweep) {
      Corpus corpus = load_corpus(sw_corpus);
      if (sw_min < 1.0 || sw_max < sw_min) throw config_error("bad lambda range");
      std::vector<double> lambdas;
      for (double l = sw_min; l <= sw_max + 1e-9; l += 1.0) lambdas.push_back(l);
      std::vector<SweepCondition> conditions;
      std::size_t start = 0;
      while (start <= sw_conditions.size()) {
        std::size_t comma = sw_conditions.find(',', start);
        std::string item = sw_conditions.substr(
            start, comma == std::string::npos ? comma : comma - start);
        if (!item.empty()) {
          SweepCondition c;
          if (item == "oracle") {
            c.kind = SweepCondition::Kind::oracle;
          } else if (item == "predicted") {
            c.kind = SweepCondition::Kind::predicted;
          } else if (item.starts_with("degraded:")) {
            c.kind = SweepCondition::Kind::degraded;
            c.target_accuracy = std::strtod(item.c_str() + 9, nullptr);
          } else {
            throw config_error("unknown sweep condition \"" + item + '"');
          }
          conditions.push_back(c);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (conditions.empty()) throw config_error("no sweep conditions given");

      EvalOptions opt;
      opt.epsilon = sw_flags.epsilon;
      opt.lambda_on_oov = sw_flags.lambda_on_oov;
      SweepCurve curve = lambda_sweep(corpus, lambdas, conditions, sw_seed, opt);
      for (const SweepPoint& p : curve.points)
        std::cout << "lambda " << fmt4(p.lambda) << " " << p.condition << ": accuracy "
                  << fmt4(p.accuracy) << ", f1 " << fmt4(p.f1) << "\n";
      fs::path dir(sw_out_dir);
      write_file(dir / "sweep.csv", sweep_csv(curve));
      write_run_config(dir, {{"command", "sweep"},
                             {"corpus", sw_corpus},
                             {"lambda_min", fmt4(sw_min)},
                             {"lambda_max", fmt4(sw_max)},
                             {"conditions", sw_conditions},
                             {"seed", std::to_string(sw_seed)},
                             {"epsilon", fmt4(sw_flags.epsilon)},
                             {"lambda_on_oov", sw_flags.lambda_on_oov ? "1" : "0"},
                             {"out_dir", sw_out_dir}});
    }

    if (*stats) {
      Corpus corpus = load_corpus(st_corpus);
      CorpusStats st;
      if (!st_against.empty()) {
        Corpus ref = load_corpus(st_against);
        Lexicon ref_lex = build_lexicon(ref);
        st = corpus_stats(corpus, &ref_lex.words);
      } else {
        st = corpus_stats(corpus);
      }
      std::cout << "sentences " << st.sentence_count << "\n"
                << "tokens " << st.token_count << "\n"
                << "lexicon " << st.lexicon_size << "\n"
                << "pos_tags " << st.pos_tagset_size << "\n"
                << "states " << st.state_set_size << "\n";
      for (const auto& [state, count] : st.state_histogram)
        std::cout << "state_" << state << " " << count << "\n";
      if (st.has_oov)
        std::cout << "oov_count " << st.oov_count << "\n"
                  << "oov_rate " << fmt4(st.oov_rate) << "\n";
      write_run_config(fs::path(st_out_dir), {{"command", "stats"},
                                              {"corpus", st_corpus},
                                              {"against", st_against},
                                              {"out_dir", st_out_dir}});
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(errc::internal);
  }
  return 0;
}
