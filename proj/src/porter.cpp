#include <array>
#include <string>
#include <string_view>

#include "taskweave/text.hpp"

namespace taskweave::text {

namespace {

class PorterWord {
 public:
  explicit PorterWord(std::string_view w) : b_(w) {}

  std::string take() { return std::move(b_); }

  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !consonant(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool hasVowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool endsDoubleConsonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // cvc where the final c is not w, x or y.
  bool endsCvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool endsWith(std::string_view s) const {
    return b_.size() >= s.size() && b_.compare(b_.size() - s.size(), s.size(), s) == 0;
  }

  std::size_t stemLen(std::string_view suffix) const { return b_.size() - suffix.size(); }

  void replaceSuffix(std::string_view suffix, std::string_view repl) {
    b_.resize(b_.size() - suffix.size());
    b_ += repl;
  }

  void step1a() {
    if (endsWith("sses")) replaceSuffix("sses", "ss");
    else if (endsWith("ies")) replaceSuffix("ies", "i");
    else if (endsWith("ss")) return;
    else if (endsWith("s")) replaceSuffix("s", "");
  }

  void step1b() {
    if (endsWith("eed")) {
      if (measure(stemLen("eed")) > 0) replaceSuffix("eed", "ee");
      return;
    }
    bool removed = false;
    if (endsWith("ed") && hasVowel(stemLen("ed"))) {
      replaceSuffix("ed", "");
      removed = true;
    } else if (endsWith("ing") && hasVowel(stemLen("ing"))) {
      replaceSuffix("ing", "");
      removed = true;
    }
    if (!removed) return;
    if (endsWith("at")) replaceSuffix("at", "ate");
    else if (endsWith("bl")) replaceSuffix("bl", "ble");
    else if (endsWith("iz")) replaceSuffix("iz", "ize");
    else if (endsDoubleConsonant(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && endsCvc(b_.size())) {
      b_ += 'e';
    }
  }

  void step1c() {
    if (endsWith("y") && hasVowel(stemLen("y"))) b_.back() = 'i';
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // Applies the first rule whose suffix matches, provided the remaining
  // stem has measure > minMeasure. Rules are listed longest-match first.
  template <std::size_t N>
  void applyFirst(const std::array<Rule, N>& rules, int minMeasure) {
    for (const auto& r : rules) {
      if (!endsWith(r.suffix)) continue;
      if (measure(stemLen(r.suffix)) > minMeasure) replaceSuffix(r.suffix, r.replacement);
      return;
    }
  }

  void step2() {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},    {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
    }};
    // "ational" must win over "tional" and "ization" over "ation"; the
    // longest matching suffix is selected first.
    const Rule* best = nullptr;
    for (const auto& r : rules)
      if (endsWith(r.suffix) && (best == nullptr || r.suffix.size() > best->suffix.size())) best = &r;
    if (best != nullptr && measure(stemLen(best->suffix)) > 0) replaceSuffix(best->suffix, best->replacement);
  }

  void step3() {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    applyFirst(rules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes{
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate",
        "iti",   "ous",  "ive",  "ize",  "ion",  "al",   "er",  "ic",  "ou"};
    const std::string_view* best = nullptr;
    for (const auto& s : suffixes)
      if (endsWith(s) && (best == nullptr || s.size() > best->size())) best = &s;
    if (best == nullptr) return;
    std::size_t len = stemLen(*best);
    if (measure(len) <= 1) return;
    if (*best == "ion" && !(len > 0 && (b_[len - 1] == 's' || b_[len - 1] == 't'))) return;
    replaceSuffix(*best, "");
  }

  void step5() {
    if (endsWith("e")) {
      std::size_t len = stemLen("e");
      int m = measure(len);
      if (m > 1 || (m == 1 && !endsCvc(len))) b_.pop_back();
    }
    if (measure(b_.size()) > 1 && endsDoubleConsonant(b_.size()) && b_.back() == 'l') b_.pop_back();
  }

 private:
  std::string b_;
};

}  // namespace

std::string stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  PorterWord w(word);
  w.step1a();
  w.step1b();
  w.step1c();
  w.step2();
  w.step3();
  w.step4();
  w.step5();
  return w.take();
}

}  // namespace taskweave::text
