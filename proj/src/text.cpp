#include "taskweave/text.hpp"

#include <algorithm>
#include <cctype>

#include "taskweave/error.hpp"

namespace taskweave::text {

namespace {

enum class CharClass { Lower, Upper, Digit, Separator };

CharClass classify(unsigned char c) {
  if (c >= 'A' && c <= 'Z') return CharClass::Upper;
  if (c >= '0' && c <= '9') return CharClass::Digit;
  if (c == '_' || c == '-' || c == '.') return CharClass::Separator;
  if (std::isspace(c)) return CharClass::Separator;
  return CharClass::Lower;  // lowercase ASCII and any non-ASCII byte
}

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

bool isAsciiAlpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

bool isNumeric(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
  });
}

bool endsWith(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Articles, determiners, pronouns, prepositions, conjunctions, auxiliaries
// and a few frequent adverbs. Used both by the tagger and as stop words.
const std::set<std::string>& closedClassWords() {
  static const std::set<std::string> words = {
      "a", "about", "above", "across", "after", "against", "all", "along", "also", "although",
      "am", "among", "an", "and", "any", "are", "around", "as", "at", "be", "been", "before",
      "behind", "being", "below", "beside", "between", "beyond", "both", "but", "by", "can",
      "could", "did", "do", "does", "doing", "done", "down", "during", "each", "either", "else",
      "every", "for", "from", "had", "has", "have", "having", "he", "her", "hers", "herself",
      "him", "himself", "his", "how", "i", "if", "in", "inside", "into", "is", "it", "its",
      "itself", "just", "may", "me", "might", "mine", "more", "most", "must", "my", "myself",
      "neither", "no", "nor", "not", "of", "off", "on", "once", "only", "onto", "or", "other",
      "our", "ours", "ourselves", "out", "outside", "over", "own", "per", "same", "shall", "she",
      "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
      "themselves", "then", "there", "these", "they", "this", "those", "through", "thus", "to",
      "too", "toward", "towards", "under", "until", "up", "upon", "us", "very", "via", "was",
      "we", "were", "what", "when", "where", "whether", "which", "while", "who", "whom", "whose",
      "why", "will", "with", "within", "without", "would", "yet", "you", "your", "yours",
      "yourself", "yourselves"};
  return words;
}

}  // namespace

std::vector<std::string> split_compound(std::string_view token) {
  std::vector<std::string> parts;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) parts.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < token.size(); ++i) {
    auto cls = classify(static_cast<unsigned char>(token[i]));
    if (cls == CharClass::Separator) {
      flush();
      continue;
    }
    if (!current.empty()) {
      auto prev = classify(static_cast<unsigned char>(token[i - 1]));
      bool nextLower = i + 1 < token.size() && classify(static_cast<unsigned char>(token[i + 1])) == CharClass::Lower;
      bool boundary = (prev == CharClass::Lower && cls == CharClass::Upper) ||
                      (prev == CharClass::Upper && cls == CharClass::Upper && nextLower) ||
                      ((prev == CharClass::Digit) != (cls == CharClass::Digit));
      if (boundary) flush();
    }
    current += lower(token[i]);
  }
  flush();
  return parts;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    std::string_view t = current;
    while (!t.empty() && (t.front() == '.' || t.front() == '-' || t.front() == '_')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == '.' || t.back() == '-' || t.back() == '_')) t.remove_suffix(1);
    if (!t.empty()) tokens.emplace_back(t);
    current.clear();
  };
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80) current += ch;
    else flush();
  }
  flush();
  return tokens;
}

PartOfSpeech tag(std::string_view word) {
  std::string w = lowercase(word);
  if (closedClassWords().contains(w) || isNumeric(w)) return PartOfSpeech::Other;
  for (std::string_view s : {"tion", "ment", "ness", "ity"})
    if (endsWith(w, s)) return PartOfSpeech::Noun;
  for (std::string_view s : {"ize", "ify", "ate"})
    if (endsWith(w, s)) return PartOfSpeech::Verb;
  return PartOfSpeech::Noun;
}

std::vector<Token> tag_tokens(std::string_view textIn) {
  std::vector<Token> out;
  for (auto& t : tokenize(textIn)) {
    auto pos = tag(t);
    out.push_back(Token{std::move(t), pos});
  }
  return out;
}

StopWords::StopWords(const std::set<std::string>& words) {
  for (const auto& w : words) {
    std::string l = lowercase(trim(w));
    if (l.empty()) continue;
    stems_.insert(stem(l));
    words_.insert(std::move(l));
  }
}

const std::set<std::string>& StopWords::domain_words() {
  static const std::set<std::string> words = {"service", "operation", "wsdl",     "soap", "http",
                                              "xml",     "request",   "response", "get",  "set"};
  return words;
}

StopWords StopWords::defaults() {
  std::set<std::string> all = closedClassWords();
  all.insert(domain_words().begin(), domain_words().end());
  return StopWords(all);
}

bool StopWords::contains_word(std::string_view w) const { return words_.contains(std::string(w)); }
bool StopWords::contains_stem(std::string_view s) const { return stems_.contains(std::string(s)); }

std::string stem_phrase(std::string_view phrase) {
  std::string out;
  for (const auto& word : tokenize(phrase)) {
    for (const auto& part : split_compound(word)) {
      if (!out.empty()) out += ' ';
      out += stem(part);
    }
  }
  return out;
}

void SynonymLexicon::add_synset(Synset synset) {
  Synset clean;
  std::vector<std::string> stems;
  auto normalize = [](const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const auto& l : in) {
      std::string t = lowercase(trim(l));
      if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
  };
  clean.lemmas = normalize(synset.lemmas);
  clean.hypernyms = normalize(synset.hypernyms);
  clean.hyponyms = normalize(synset.hyponyms);
  if (clean.lemmas.empty()) return;
  std::size_t id = synsets_.size();
  for (const auto& l : clean.lemmas) {
    index_[l].insert(id);
    std::string s = stem_phrase(l);
    if (s.empty()) continue;
    stemIndex_[s].insert(id);
    stems.push_back(std::move(s));
  }
  synsets_.push_back(std::move(clean));
  synsetStems_.push_back(std::move(stems));
}

std::set<std::string> SynonymLexicon::expand(const std::string& stemmedKeyword) const {
  std::set<std::string> out{stemmedKeyword};
  auto it = stemIndex_.find(stemmedKeyword);
  if (it == stemIndex_.end()) return out;
  for (auto id : it->second) out.insert(synsetStems_[id].begin(), synsetStems_[id].end());
  return out;
}

SynonymLexicon load_lexicon(std::string_view content) {
  std::vector<SynonymLexicon::Synset> synsets;
  std::size_t lineNo = 0;
  auto splitBar = [](std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
      auto bar = s.find('|', start);
      auto piece = trim(s.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
      if (!piece.empty()) out.emplace_back(piece);
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    return out;
  };
  while (!content.empty()) {
    ++lineNo;
    auto nl = content.find('\n');
    std::string_view line = trim(content.substr(0, nl));
    content = nl == std::string_view::npos ? std::string_view() : content.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '>') {
      if (synsets.empty()) throw ParseError("relation line before any synset", lineNo, 1);
      line.remove_prefix(1);
      auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError("relation line needs 'kind:' prefix", lineNo, 2);
      auto kind = trim(line.substr(0, colon));
      auto lemmas = splitBar(line.substr(colon + 1));
      auto& target = synsets.back();
      if (kind == "hypernym") target.hypernyms.insert(target.hypernyms.end(), lemmas.begin(), lemmas.end());
      else if (kind == "hyponym") target.hyponyms.insert(target.hyponyms.end(), lemmas.begin(), lemmas.end());
      else throw ParseError("unknown relation '" + std::string(kind) + "'", lineNo, 2);
      continue;
    }
    auto lemmas = splitBar(line);
    if (lemmas.empty()) continue;
    synsets.push_back(SynonymLexicon::Synset{std::move(lemmas), {}, {}});
  }
  SynonymLexicon lex;
  for (auto& s : synsets) lex.add_synset(std::move(s));
  return lex;
}

std::set<std::string> expand_synonyms(const std::string& stemmedKeyword, const SynonymLexicon& lexicon) {
  return lexicon.expand(stemmedKeyword);
}

KeywordSet extract_keywords(std::string_view textIn, const StopWords& stopWords,
                            [[maybe_unused]] const SynonymLexicon& lexicon) {
  KeywordSet out;
  for (const auto& token : tag_tokens(textIn)) {
    if (token.pos == PartOfSpeech::Other) continue;
    if (stopWords.contains_word(lowercase(token.surface))) continue;
    for (const auto& part : split_compound(token.surface)) {
      if (part.size() < 2 || !isAsciiAlpha(part)) continue;
      if (stopWords.contains_word(part)) continue;
      std::string s = stem(part);
      if (s.empty() || stopWords.contains_stem(s) || stopWords.contains_word(s)) continue;
      out.insert(std::move(s));
    }
  }
  return out;
}

std::vector<std::string> name_key(std::string_view name) {
  std::vector<std::string> key;
  for (auto& part : split_compound(name)) key.push_back(stem(part));
  return key;
}

bool names_match(std::string_view a, std::string_view b, const SynonymLexicon& lexicon) {
  auto ka = name_key(a);
  auto kb = name_key(b);
  if (ka.empty() || kb.empty()) return lowercase(trim(a)) == lowercase(trim(b));
  if (ka == kb) return true;
  auto join = [](const std::vector<std::string>& k) {
    std::string out;
    for (const auto& p : k) {
      if (!out.empty()) out += ' ';
      out += p;
    }
    return out;
  };
  if (lexicon.expand(join(ka)).contains(join(kb))) return true;
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!lexicon.expand(ka[i]).contains(kb[i])) return false;
  return true;
}

}  // namespace taskweave::text
