#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seqtag/errors.hpp"
#include "seqtag/model.hpp"
#include "seqtag/pipeline.hpp"

namespace seqtag {

// Versioned UTF-8 text format. Header line, family line, then labeled blocks:
// string inventories one entry per line, numeric tables row-major with one row
// per line. Probabilities are printed with 17 significant digits so that a
// save/load round trip reproduces every double bit for bit.

inline constexpr int kModelFormatVersion = 1;

namespace model_io_detail {

using fmt_err = model_format_error;
using reason = model_format_error::reason;

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Writer {
  std::string out;

  void line(const std::string& s) {
    out += s;
    out += '\n';
  }
  void strs(const std::string& name, const std::vector<std::string>& v) {
    line("strs " + name + ' ' + std::to_string(v.size()));
    for (const auto& s : v) line(s);
  }
  void intval(const std::string& name, std::int64_t v) {
    line("int " + name + ' ' + std::to_string(v));
  }
  void vec(const std::string& name, const std::vector<double>& v) {
    line("vec " + name + ' ' + std::to_string(v.size()));
    std::string row;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) row += ' ';
      row += fmt_double(v[i]);
    }
    line(row);
  }
  void ivec(const std::string& name, const std::vector<std::int64_t>& v) {
    line("ivec " + name + ' ' + std::to_string(v.size()));
    std::string row;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) row += ' ';
      row += std::to_string(v[i]);
    }
    line(row);
  }
  template <typename T>
  void grid2(const std::string& kw, const std::string& name, const Grid2<T>& g) {
    line(kw + ' ' + name + ' ' + std::to_string(g.rows()) + ' ' + std::to_string(g.cols()));
    for (std::size_t i = 0; i < g.rows(); ++i) {
      std::string row;
      for (std::size_t j = 0; j < g.cols(); ++j) {
        if (j) row += ' ';
        if constexpr (std::is_same_v<T, double>)
          row += fmt_double(g(i, j));
        else
          row += std::to_string(g(i, j));
      }
      line(row);
    }
  }
  template <typename T>
  void grid3(const std::string& kw, const std::string& name, const Grid3<T>& g) {
    line(kw + ' ' + name + ' ' + std::to_string(g.dim0()) + ' ' + std::to_string(g.dim1()) + ' ' +
         std::to_string(g.dim2()));
    for (std::size_t i = 0; i < g.dim0(); ++i)
      for (std::size_t j = 0; j < g.dim1(); ++j) {
        std::string row;
        for (std::size_t k = 0; k < g.dim2(); ++k) {
          if (k) row += ' ';
          if constexpr (std::is_same_v<T, double>)
            row += fmt_double(g(i, j, k));
          else
            row += std::to_string(g(i, j, k));
        }
        line(row);
      }
  }
};

struct Reader {
  std::string_view text;
  std::size_t pos = 0;

  bool at_end() const { return pos >= text.size(); }

  std::string_view next_line() {
    if (at_end()) throw fmt_err(reason::truncated, "unexpected end of model file");
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol < text.size() ? eol + 1 : text.size();
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }

  // Expects "<kw> <name> <dims...>"; returns the dims.
  std::vector<std::size_t> header(const std::string& kw, const std::string& name,
                                  std::size_t ndims) {
    std::string_view line = next_line();
    std::vector<std::string_view> parts = split(line);
    if (parts.size() != 2 + ndims || parts[0] != kw || parts[1] != name)
      throw fmt_err(reason::dimension_mismatch,
                    "expected block \"" + kw + ' ' + name + "\", got \"" + std::string(line) +
                        '"');
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < ndims; ++i) dims.push_back(to_size(parts[2 + i]));
    return dims;
  }

  static std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < line.size()) {
      std::size_t j = line.find(' ', i);
      if (j == std::string_view::npos) j = line.size();
      if (j > i) parts.push_back(line.substr(i, j - i));
      i = j + 1;
    }
    return parts;
  }

  static std::size_t to_size(std::string_view s) {
    char* end = nullptr;
    std::string tmp(s);
    long long v = std::strtoll(tmp.c_str(), &end, 10);
    if (end != tmp.c_str() + tmp.size() || v < 0)
      throw fmt_err(reason::bad_value, "bad dimension \"" + tmp + '"');
    return static_cast<std::size_t>(v);
  }

  static double to_double(std::string_view s) {
    char* end = nullptr;
    std::string tmp(s);
    double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size())
      throw fmt_err(reason::bad_value, "bad numeric value \"" + tmp + '"');
    return v;
  }

  static std::int64_t to_int(std::string_view s) {
    char* end = nullptr;
    std::string tmp(s);
    long long v = std::strtoll(tmp.c_str(), &end, 10);
    if (end != tmp.c_str() + tmp.size())
      throw fmt_err(reason::bad_value, "bad integer value \"" + tmp + '"');
    return v;
  }

  std::vector<std::string> strs(const std::string& name) {
    std::size_t n = header("strs", name, 1)[0];
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(next_line());
    return v;
  }

  std::int64_t intval(const std::string& name) {
    std::string_view line = next_line();
    auto parts = split(line);
    if (parts.size() != 3 || parts[0] != "int" || parts[1] != name)
      throw fmt_err(reason::dimension_mismatch,
                    "expected \"int " + name + "\", got \"" + std::string(line) + '"');
    return to_int(parts[2]);
  }

  template <typename T>
  std::vector<T> row(std::size_t n) {
    auto parts = split(next_line());
    if (parts.size() != n)
      throw fmt_err(reason::dimension_mismatch, "table row has " + std::to_string(parts.size()) +
                                                    " entries, expected " + std::to_string(n));
    std::vector<T> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if constexpr (std::is_same_v<T, double>)
        v[i] = to_double(parts[i]);
      else
        v[i] = to_int(parts[i]);
    }
    return v;
  }

  std::vector<double> vec(const std::string& name) {
    std::size_t n = header("vec", name, 1)[0];
    return row<double>(n);
  }
  std::vector<std::int64_t> ivec(const std::string& name) {
    std::size_t n = header("ivec", name, 1)[0];
    return row<std::int64_t>(n);
  }

  template <typename T>
  Grid2<T> grid2(const std::string& kw, const std::string& name) {
    auto dims = header(kw, name, 2);
    Grid2<T> g(dims[0], dims[1]);
    for (std::size_t i = 0; i < dims[0]; ++i) {
      std::vector<T> r = row<T>(dims[1]);
      for (std::size_t j = 0; j < dims[1]; ++j) g(i, j) = r[j];
    }
    return g;
  }

  template <typename T>
  Grid3<T> grid3(const std::string& kw, const std::string& name) {
    auto dims = header(kw, name, 3);
    Grid3<T> g(dims[0], dims[1], dims[2]);
    for (std::size_t i = 0; i < dims[0]; ++i)
      for (std::size_t j = 0; j < dims[1]; ++j) {
        std::vector<T> r = row<T>(dims[2]);
        for (std::size_t k = 0; k < dims[2]; ++k) g(i, j, k) = r[k];
      }
    return g;
  }

  void expect(const std::string& literal) {
    std::string_view line = next_line();
    if (line != literal)
      throw fmt_err(reason::dimension_mismatch,
                    "expected \"" + literal + "\", got \"" + std::string(line) + '"');
  }
};

inline void check_dim(bool ok, const std::string& what) {
  if (!ok) throw fmt_err(reason::dimension_mismatch, what + " does not match the inventories");
}

inline Lexicon rebuild_lexicon(std::vector<std::string> words,
                               const std::vector<std::string>& prefixes) {
  Lexicon lex;
  for (auto& w : words) lex.add(w);
  if (lex.prefixes != prefixes)
    throw fmt_err(reason::bad_value, "prefix inventory does not match the prefix rule");
  return lex;
}

// --- per-family payloads (everything after the version line) ---

inline void write_first(Writer& w, const FirstOrderModel& m) {
  w.line("family first");
  w.strs("states", m.state_set);
  w.strs("words", m.lexicon.words);
  w.strs("prefixes", m.lexicon.prefixes);
  w.intval("sentences", m.sentence_count);
  w.vec("pi", m.pi);
  w.ivec("pi_count", m.pi_count);
  w.grid2("mat", "trans", m.trans);
  w.grid2("imat", "trans_count", m.trans_count);
  w.grid2("mat", "emit", m.emit);
  w.grid2("imat", "emit_count", m.emit_count);
  w.grid2("mat", "prefix_emit", m.prefix_emit.table);
  w.line("end");
}

inline FirstOrderModel read_first(Reader& r) {
  FirstOrderModel m;
  m.state_set = r.strs("states");
  std::vector<std::string> words = r.strs("words");
  std::vector<std::string> prefixes = r.strs("prefixes");
  m.lexicon = rebuild_lexicon(std::move(words), prefixes);
  m.sentence_count = r.intval("sentences");
  m.pi = r.vec("pi");
  m.pi_count = r.ivec("pi_count");
  m.trans = r.grid2<double>("mat", "trans");
  m.trans_count = r.grid2<std::int64_t>("imat", "trans_count");
  m.emit = r.grid2<double>("mat", "emit");
  m.emit_count = r.grid2<std::int64_t>("imat", "emit_count");
  m.prefix_emit.prefixes = prefixes;
  m.prefix_emit.table = r.grid2<double>("mat", "prefix_emit");
  r.expect("end");

  std::size_t n = m.state_set.size(), v = m.lexicon.size(), p = prefixes.size();
  check_dim(m.pi.size() == n && m.pi_count.size() == n, "pi");
  check_dim(m.trans.rows() == n && m.trans.cols() == n, "trans");
  check_dim(m.trans_count.rows() == n && m.trans_count.cols() == n, "trans_count");
  check_dim(m.emit.rows() == n && m.emit.cols() == v, "emit");
  check_dim(m.emit_count.rows() == n && m.emit_count.cols() == v, "emit_count");
  check_dim(m.prefix_emit.table.rows() == n && m.prefix_emit.table.cols() == p, "prefix_emit");
  return m;
}

inline void write_second(Writer& w, const SecondOrderModel& m) {
  w.line("family second");
  w.strs("states", m.state_set);
  w.strs("words", m.lexicon.words);
  w.strs("prefixes", m.lexicon.prefixes);
  w.intval("sentences", m.sentence_count);
  w.vec("pi", m.pi);
  w.ivec("pi_count", m.pi_count);
  w.grid3("ten", "trans3", m.trans3);
  w.grid3("iten", "trans3_count", m.trans3_count);
  w.grid3("ten", "emit2", m.emit2);
  w.grid3("iten", "emit2_count", m.emit2_count);
  w.grid2("mat", "trans2", m.trans2);
  w.grid2("mat", "emit1", m.emit1);
  w.grid3("ten", "prefix_emit2", m.prefix_emit2.table);
  w.grid2("mat", "prefix_emit1", m.prefix_emit1.table);
  w.line("end");
}

inline SecondOrderModel read_second(Reader& r) {
  SecondOrderModel m;
  m.state_set = r.strs("states");
  std::vector<std::string> words = r.strs("words");
  std::vector<std::string> prefixes = r.strs("prefixes");
  m.lexicon = rebuild_lexicon(std::move(words), prefixes);
  m.sentence_count = r.intval("sentences");
  m.pi = r.vec("pi");
  m.pi_count = r.ivec("pi_count");
  m.trans3 = r.grid3<double>("ten", "trans3");
  m.trans3_count = r.grid3<std::int64_t>("iten", "trans3_count");
  m.emit2 = r.grid3<double>("ten", "emit2");
  m.emit2_count = r.grid3<std::int64_t>("iten", "emit2_count");
  m.trans2 = r.grid2<double>("mat", "trans2");
  m.emit1 = r.grid2<double>("mat", "emit1");
  m.prefix_emit2.prefixes = prefixes;
  m.prefix_emit2.table = r.grid3<double>("ten", "prefix_emit2");
  m.prefix_emit1.prefixes = prefixes;
  m.prefix_emit1.table = r.grid2<double>("mat", "prefix_emit1");
  r.expect("end");

  std::size_t n = m.state_set.size(), v = m.lexicon.size(), p = prefixes.size();
  check_dim(m.pi.size() == n && m.pi_count.size() == n, "pi");
  check_dim(m.trans3.dim0() == n && m.trans3.dim1() == n && m.trans3.dim2() == n, "trans3");
  check_dim(m.trans3_count.dim0() == n && m.trans3_count.dim1() == n && m.trans3_count.dim2() == n,
            "trans3_count");
  check_dim(m.emit2.dim0() == n && m.emit2.dim1() == n && m.emit2.dim2() == v, "emit2");
  check_dim(m.emit2_count.dim0() == n && m.emit2_count.dim1() == n && m.emit2_count.dim2() == v,
            "emit2_count");
  check_dim(m.trans2.rows() == n && m.trans2.cols() == n, "trans2");
  check_dim(m.emit1.rows() == n && m.emit1.cols() == v, "emit1");
  check_dim(m.prefix_emit2.table.dim0() == n && m.prefix_emit2.table.dim1() == n &&
                m.prefix_emit2.table.dim2() == p,
            "prefix_emit2");
  check_dim(m.prefix_emit1.table.rows() == n && m.prefix_emit1.table.cols() == p, "prefix_emit1");
  return m;
}

inline void write_feature(Writer& w, const FeatureConditionedModel& m) {
  w.line("family feature");
  w.strs("states", m.state_set);
  w.strs("tags", m.feature_tagset);
  w.strs("words", m.lexicon.words);
  w.strs("prefixes", m.lexicon.prefixes);
  w.intval("sentences", m.sentence_count);
  w.vec("pi", m.pi);
  w.ivec("pi_count", m.pi_count);
  w.grid3("ten", "trans_f", m.trans_f);
  w.grid3("iten", "trans_f_count", m.trans_f_count);
  w.grid3("ten", "emit_f", m.emit_f);
  w.grid3("iten", "emit_f_count", m.emit_f_count);
  w.grid3("ten", "prefix_emit_f", m.prefix_emit_f.table);
  w.line("end");
}

inline FeatureConditionedModel read_feature(Reader& r) {
  FeatureConditionedModel m;
  m.state_set = r.strs("states");
  m.feature_tagset = r.strs("tags");
  std::vector<std::string> words = r.strs("words");
  std::vector<std::string> prefixes = r.strs("prefixes");
  m.lexicon = rebuild_lexicon(std::move(words), prefixes);
  m.sentence_count = r.intval("sentences");
  m.pi = r.vec("pi");
  m.pi_count = r.ivec("pi_count");
  m.trans_f = r.grid3<double>("ten", "trans_f");
  m.trans_f_count = r.grid3<std::int64_t>("iten", "trans_f_count");
  m.emit_f = r.grid3<double>("ten", "emit_f");
  m.emit_f_count = r.grid3<std::int64_t>("iten", "emit_f_count");
  m.prefix_emit_f.prefixes = prefixes;
  m.prefix_emit_f.table = r.grid3<double>("ten", "prefix_emit_f");
  r.expect("end");

  std::size_t n = m.state_set.size(), k = m.feature_tagset.size(), v = m.lexicon.size(),
              p = prefixes.size();
  check_dim(m.pi.size() == n && m.pi_count.size() == n, "pi");
  check_dim(m.trans_f.dim0() == k && m.trans_f.dim1() == n && m.trans_f.dim2() == n, "trans_f");
  check_dim(m.trans_f_count.dim0() == k && m.trans_f_count.dim1() == n &&
                m.trans_f_count.dim2() == n,
            "trans_f_count");
  check_dim(m.emit_f.dim0() == k && m.emit_f.dim1() == n && m.emit_f.dim2() == v, "emit_f");
  check_dim(m.emit_f_count.dim0() == k && m.emit_f_count.dim1() == n &&
                m.emit_f_count.dim2() == v,
            "emit_f_count");
  check_dim(m.prefix_emit_f.table.dim0() == k && m.prefix_emit_f.table.dim1() == n &&
                m.prefix_emit_f.table.dim2() == p,
            "prefix_emit_f");
  return m;
}

inline void write_pipeline(Writer& w, const PipelineModel& m) {
  w.line("family pipeline");
  w.line("cfg lambda " + fmt_double(m.config.lambda));
  w.line(std::string("cfg space ") +
         (m.config.space == Space::log_space ? "log" : "probability"));
  w.line(std::string("cfg oov_policy ") +
         (m.config.oov_policy == OovPolicy::prefix_table ? "prefix_table" : "error"));
  w.line(std::string("cfg lambda_on_oov ") + (m.config.lambda_on_oov ? "1" : "0"));
  w.line(std::string("cfg tag_source ") +
         (m.config.tag_source == TagSource::predicted ? "predicted" : "oracle"));
  w.line(std::string("cfg layer1_family ") +
         (m.config.layer1_family == Layer1Family::first_order ? "first" : "second"));
  w.line("cfg epsilon " + fmt_double(m.config.epsilon));
  w.line("layer1");
  if (std::holds_alternative<FirstOrderModel>(m.layer1))
    write_first(w, std::get<FirstOrderModel>(m.layer1));
  else
    write_second(w, std::get<SecondOrderModel>(m.layer1));
  w.line("layer2");
  write_feature(w, m.layer2);
  w.line("end");
}

inline PipelineModel read_pipeline(Reader& r) {
  PipelineModel m;
  auto cfg_line = [&](const std::string& key) -> std::string {
    auto parts = Reader::split(r.next_line());
    if (parts.size() != 3 || parts[0] != "cfg" || parts[1] != key)
      throw fmt_err(reason::dimension_mismatch, "expected \"cfg " + key + '"');
    return std::string(parts[2]);
  };
  m.config.lambda = Reader::to_double(cfg_line("lambda"));
  m.config.space = cfg_line("space") == "log" ? Space::log_space : Space::probability;
  m.config.oov_policy =
      cfg_line("oov_policy") == "prefix_table" ? OovPolicy::prefix_table : OovPolicy::error;
  m.config.lambda_on_oov = cfg_line("lambda_on_oov") == "1";
  m.config.tag_source =
      cfg_line("tag_source") == "predicted" ? TagSource::predicted : TagSource::oracle;
  m.config.layer1_family =
      cfg_line("layer1_family") == "first" ? Layer1Family::first_order : Layer1Family::second_order;
  m.config.epsilon = Reader::to_double(cfg_line("epsilon"));

  r.expect("layer1");
  std::string_view family_line = r.next_line();
  if (family_line == "family first")
    m.layer1 = read_first(r);
  else if (family_line == "family second")
    m.layer1 = read_second(r);
  else
    throw fmt_err(reason::bad_value, "unknown layer1 family line");
  r.expect("layer2");
  r.expect("family feature");
  m.layer2 = read_feature(r);
  r.expect("end");

  if (m.layer2.feature_tagset !=
      (std::holds_alternative<FirstOrderModel>(m.layer1)
           ? std::get<FirstOrderModel>(m.layer1).state_set
           : std::get<SecondOrderModel>(m.layer1).state_set))
    throw fmt_err(reason::bad_value, "layer-2 tagset does not match the layer-1 state set");
  return m;
}

inline std::string with_header(const std::string& payload) {
  return "seqtag-model " + std::to_string(kModelFormatVersion) + '\n' + payload;
}

inline Reader open_reader(std::string_view text) {
  Reader r{text, 0};
  if (r.at_end()) throw fmt_err(reason::truncated, "empty model file");
  std::string_view first = r.next_line();
  auto parts = Reader::split(first);
  if (parts.size() != 2 || parts[0] != "seqtag-model")
    throw fmt_err(reason::version_mismatch, "not a seqtag-model file");
  if (parts[1] != std::to_string(kModelFormatVersion))
    throw fmt_err(reason::version_mismatch,
                  "unsupported model format version " + std::string(parts[1]));
  return r;
}

}  // namespace model_io_detail

// --- public surface ---

inline std::string save_model(const FirstOrderModel& m) {
  model_io_detail::Writer w;
  model_io_detail::write_first(w, m);
  return model_io_detail::with_header(w.out);
}

inline std::string save_model(const SecondOrderModel& m) {
  model_io_detail::Writer w;
  model_io_detail::write_second(w, m);
  return model_io_detail::with_header(w.out);
}

inline std::string save_model(const FeatureConditionedModel& m) {
  model_io_detail::Writer w;
  model_io_detail::write_feature(w, m);
  return model_io_detail::with_header(w.out);
}

inline std::string save_model(const PipelineModel& m) {
  model_io_detail::Writer w;
  model_io_detail::write_pipeline(w, m);
  return model_io_detail::with_header(w.out);
}

using LoadedModel =
    std::variant<FirstOrderModel, SecondOrderModel, FeatureConditionedModel, PipelineModel>;

inline LoadedModel load_model(std::string_view text) {
  using namespace model_io_detail;
  Reader r = open_reader(text);
  std::string_view family_line = r.next_line();
  LoadedModel m;
  if (family_line == "family first")
    m = read_first(r);
  else if (family_line == "family second")
    m = read_second(r);
  else if (family_line == "family feature")
    m = read_feature(r);
  else if (family_line == "family pipeline")
    m = read_pipeline(r);
  else
    throw fmt_err(reason::bad_value, "unknown model family \"" + std::string(family_line) + '"');
  return m;
}

inline const char* loaded_family_name(const LoadedModel& m) {
  switch (m.index()) {
    case 0: return "first";
    case 1: return "second";
    case 2: return "feature";
    default: return "pipeline";
  }
}

}  // namespace seqtag
