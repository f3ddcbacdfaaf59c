// Generates the synthetic recipe corpus shipped under data/: noun-phrase
// sentences over a 14-tag POS inventory with ingredient states 0-3, dual-role
// words that are ambiguous for token-only taggers but resolved by their POS
// tag, and a singleton tail of fresh words that drives the OOV rate of
// held-out splits. Deterministic for a fixed seed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqtag/rng.hpp"

using seqtag::Rng;

namespace {

struct Token {
  std::string word;
  std::string tag;
  std::string state;
};

const std::vector<std::string> kQuantifiers = {"رشة", "ملعقة", "كوب",  "نصف",
                                               "ربع", "كمية",  "حفنة", "قليل"};
const std::vector<std::string> kNumbers = {"2", "3", "5", "100", "250", "7", "20", "1", "4", "10"};
const std::vector<std::string> kUnits = {"غرام", "كيلو", "لتر", "مل", "رطل", "اوقية"};
const std::vector<std::string> kOr = {"أو", "أم"};
const std::vector<std::string> kPreps = {"من", "في", "على", "مع"};
const std::vector<std::string> kVerbs = {"يضاف", "يخلط", "يطحن", "يقطع", "يسكب", "يرش"};
const std::vector<std::string> kAdverbs = {"جيدا", "تماما", "كثيرا", "ببطء"};
const std::vector<std::string> kUtensils = {"وعاء", "قدر",   "صحن",  "نار",  "فرن",
                                            "خلاط", "سكين",  "طبق",  "مقلاة", "غطاء"};
// Appear both as ingredients (state 1) and as plain mentions (state 0).
const std::vector<std::string> kDual = {"ماء",  "ملح",  "سكر", "زيت",  "خل",   "عسل",
                                        "لبن",  "دقيق", "ارز", "ثوم",  "بصل",  "ليمون"};
const std::vector<std::string> kStems = {
    "ملح",   "بصل",   "فلفل",  "ثوم",   "سكر",   "زيت",   "خل",    "كمون",  "كركم",
    "زعتر",  "قرفة",  "زنجبيل", "بقدونس", "كزبرة",  "نعناع",  "ريحان",  "شبت",   "سمسم",
    "لوز",   "جوز",   "فستق",  "بندق",  "زبيب",  "تمر",   "تين",   "مشمش",  "خوخ",
    "رمان",  "برتقال", "موز",   "تفاح",  "عنب",   "جزر",   "بطاطس", "طماطم",  "خيار",
    "كوسة",  "باذنجان", "فجل",  "لفت",   "سبانخ", "ملفوف",  "قرنبيط", "بازلاء", "عدس"};
const std::vector<std::string> kAdjectives = {"اسود",  "ابيض", "احمر",  "حار",  "ناعم", "مطحون",
                                              "طازج", "مجفف", "مفروم", "مبشور", "حلو",  "مر"};
const std::vector<std::string> kLetters = {"ب", "ت", "ج", "ح", "د", "ر", "ز", "س",
                                           "ش", "ص", "ط", "ع", "ف", "ق", "ك", "ل",
                                           "م", "ن", "ه", "و", "ي"};

struct Generator {
  Rng rng;
  std::set<std::string> used_rare;
  double rare_rate;

  explicit Generator(std::uint64_t seed, double rare) : rng(seed), rare_rate(rare) {}

  const std::string& pick(const std::vector<std::string>& pool) {
    return pool[static_cast<std::size_t>(rng.below(pool.size()))];
  }

  std::string fresh_rare_word(bool definite) {
    for (;;) {
      std::string w = definite ? "ال" : "";
      std::size_t len = (definite ? 2 : 3) + static_cast<std::size_t>(rng.below(3));
      for (std::size_t i = 0; i < len; ++i) w += pick(kLetters);
      if (used_rare.insert(w).second) return w;
    }
  }

  // Core ingredient noun: "ال" + stem, or a fresh singleton (60% with the
  // definite prefix, the rest bare so prefix keys stay imperfect evidence).
  std::string ingredient_noun() {
    if (rng.unit() < rare_rate) return fresh_rare_word(rng.unit() < 0.6);
    return "ال" + pick(kStems);
  }

  // Quantified noun slot: usually the annotated ingredient, sometimes a
  // mention that the annotation leaves at state 0 (utensils always, dual-role
  // words occasionally).
  void ing_single(std::vector<Token>& out, const std::string& tag) {
    double r = rng.unit();
    if (r < 0.24)
      out.push_back({pick(kDual), tag, "1"});
    else if (r < 0.74)
      out.push_back({ingredient_noun(), tag, "1"});
    else if (r < 0.92)
      out.push_back({pick(kUtensils), tag, "0"});
    else
      out.push_back({pick(kDual), tag, "0"});
  }

  // Noun after a preposition: ingredient, utensil, or a plain mention of a
  // dual-role word. The tag stays H either way; only the state differs.
  void ing_after_prep(std::vector<Token>& out) {
    double r = rng.unit();
    if (r < 0.45)
      out.push_back({ingredient_noun(), "H", "1"});
    else if (r < 0.65)
      out.push_back({pick(kDual), "H", "1"});
    else if (r < 0.90)
      out.push_back({pick(kUtensils), "H", "0"});
    else
      out.push_back({pick(kDual), "H", "0"});
  }

  // Multi-word ingredient: noun-before-adjective plus one or two adjectives.
  void ing_multi(std::vector<Token>& out) {
    if (rng.unit() < 0.25)
      out.push_back({pick(kDual), "E", "1"});
    else
      out.push_back({ingredient_noun(), "E", "1"});
    out.push_back({pick(kAdjectives), "F", "2"});
    if (rng.unit() < 0.40) {
      const char* third = rng.unit() < 0.5 ? "3" : "2";
      out.push_back({pick(kAdjectives), "F", third});
    }
  }

  void plain_noun(std::vector<Token>& out) {
    double r = rng.unit();
    if (r < 0.45)
      out.push_back({pick(kDual), "A", "0"});
    else if (r < 0.53)
      out.push_back({fresh_rare_word(false), "A", "0"});
    else
      out.push_back({pick(kUtensils), "A", "0"});
  }

  std::vector<Token> sentence() {
    std::vector<Token> s;
    std::size_t t = static_cast<std::size_t>(rng.below(100));
    if (t < 14) {  // C D .
      s.push_back({pick(kQuantifiers), "C", "0"});
      ing_single(s, "D");
    } else if (t < 26) {  // C D J D .
      s.push_back({pick(kQuantifiers), "C", "0"});
      ing_single(s, "D");
      s.push_back({"و", "J", "0"});
      ing_single(s, "D");
    } else if (t < 38) {  // C E F [F] .
      s.push_back({pick(kQuantifiers), "C", "0"});
      ing_multi(s);
    } else if (t < 46) {  // B I G H .
      s.push_back({pick(kNumbers), "B", "0"});
      s.push_back({pick(kUnits), "I", "0"});
      s.push_back({pick(kPreps), "G", "0"});
      ing_after_prep(s);
    } else if (t < 53) {  // K A G H L .
      s.push_back({pick(kVerbs), "K", "0"});
      plain_noun(s);
      s.push_back({pick(kPreps), "G", "0"});
      ing_after_prep(s);
      s.push_back({pick(kAdverbs), "L", "0"});
    } else if (t < 58) {  // B I D .
      s.push_back({pick(kNumbers), "B", "0"});
      s.push_back({pick(kUnits), "I", "0"});
      ing_single(s, "D");
    } else if (t < 64) {  // C D M D .
      s.push_back({pick(kQuantifiers), "C", "0"});
      ing_single(s, "D");
      s.push_back({pick(kOr), "M", "0"});
      ing_single(s, "D");
    } else if (t < 70) {  // C E F J D .
      s.push_back({pick(kQuantifiers), "C", "0"});
      ing_multi(s);
      s.push_back({"و", "J", "0"});
      ing_single(s, "D");
    } else if (t < 76) {  // A G H .
      plain_noun(s);
      s.push_back({pick(kPreps), "G", "0"});
      ing_after_prep(s);
    } else if (t < 86) {  // K D L .  -- dual-role noun annotated as ingredient
      s.push_back({pick(kVerbs), "K", "0"});
      s.push_back({pick(kDual), "D", "1"});
      s.push_back({pick(kAdverbs), "L", "0"});
    } else if (t < 96) {  // K A L .  -- same surface shape, plain mention
      s.push_back({pick(kVerbs), "K", "0"});
      s.push_back({pick(kDual), "A", "0"});
      s.push_back({pick(kAdverbs), "L", "0"});
    } else {  // D J D .  (sentence-initial ingredient pair)
      ing_single(s, "D");
      s.push_back({"و", "J", "0"});
      ing_single(s, "D");
    }
    s.push_back({".", ".", "0"});
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic recipe corpus fixture."};
  std::size_t sentences = 300;
  std::uint64_t seed = 777;
  double rare_rate = 0.54;
  std::string out_path = "synthetic_corpus.tsv";
  app.add_option("--sentences", sentences)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--rare-rate", rare_rate)->capture_default_str();
  app.add_option("--out", out_path)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  Generator gen(seed, rare_rate);
  std::string out;
  for (std::size_t i = 0; i < sentences; ++i) {
    for (const Token& t : gen.sentence()) {
      out += t.word;
      out += '\t';
      out += t.tag;
      out += '\t';
      out += t.state;
      out += '\n';
    }
    if (i + 1 < sentences) out += '\n';
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << out_path << "\n";
    return 3;
  }
  f << out;
  std::cout << "wrote " << sentences << " sentences to " << out_path << "\n";
  return 0;
}
