#pragma once

// Keyword extraction: tokenize, keep nouns and verbs, split compound
// identifiers, drop stop words, stem. Plus the offline synonym lexicon.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace taskweave::text {

enum class PartOfSpeech { Noun, Verb, Other };

struct Token {
  std::string surface;
  PartOfSpeech pos = PartOfSpeech::Other;
};

// Sorted set of lowercase stems.
using KeywordSet = std::set<std::string>;

// "getFlightPrice" -> get, flight, price. Splits on camelCase, on
// letter/digit boundaries and on '_', '-', '.'. A run of capitals stays
// together until a lowercase letter follows ("HTTPServer" -> http, server).
std::vector<std::string> split_compound(std::string_view token);

// Porter (1980) stemmer. Input is expected lowercase; words of length <= 2
// are returned unchanged.
std::string stem(std::string_view word);

std::vector<std::string> tokenize(std::string_view text);
PartOfSpeech tag(std::string_view word);
std::vector<Token> tag_tokens(std::string_view text);

class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(const std::set<std::string>& words);

  // English closed-class words plus the domain list
  // {service, operation, wsdl, soap, http, xml, request, response, get, set}.
  static StopWords defaults();
  static const std::set<std::string>& domain_words();

  bool contains_word(std::string_view lowercaseWord) const;
  bool contains_stem(std::string_view stem) const;
  const std::set<std::string>& words() const { return words_; }

 private:
  std::set<std::string> words_;
  std::set<std::string> stems_;
};

class SynonymLexicon {
 public:
  struct Synset {
    std::vector<std::string> lemmas;
    std::vector<std::string> hypernyms;
    std::vector<std::string> hyponyms;

    bool operator==(const Synset&) const = default;
  };

  SynonymLexicon() = default;

  void add_synset(Synset synset);

  const std::vector<Synset>& synsets() const { return synsets_; }
  // Lowercased lemma -> synset ids.
  const std::map<std::string, std::set<std::size_t>>& index() const { return index_; }
  // Stem of each lemma -> synset ids; synonym lookups go through stems.
  const std::map<std::string, std::set<std::size_t>>& stem_index() const { return stemIndex_; }

  std::set<std::string> expand(const std::string& stemmedKeyword) const;
  bool empty() const { return synsets_.empty(); }

  bool operator==(const SynonymLexicon& other) const { return synsets_ == other.synsets_; }

 private:
  std::vector<Synset> synsets_;
  std::vector<std::vector<std::string>> synsetStems_;
  std::map<std::string, std::set<std::size_t>> index_;
  std::map<std::string, std::set<std::size_t>> stemIndex_;
};

// One synset per line, lemmas separated by '|'. '#' starts a comment line;
// blank lines are skipped. Lines starting with '>' attach relations to the
// preceding synset: ">hypernym:a|b" or ">hyponym:c".
SynonymLexicon load_lexicon(std::string_view content);

// Stem form of a lemma or identifier. Multi-word or compound lemmas are
// split and each part stemmed, joined by a single space.
std::string stem_phrase(std::string_view phrase);

std::set<std::string> expand_synonyms(const std::string& stemmedKeyword, const SynonymLexicon& lexicon);

KeywordSet extract_keywords(std::string_view text, const StopWords& stopWords, const SynonymLexicon& lexicon);

// Parameter-name normalization shared by consistency checking, matching and
// composition: split the identifier, stem each part.
std::vector<std::string> name_key(std::string_view name);
// True when two parameter names refer to the same concept: the stemmed
// phrases are synonyms, or every aligned part is.
bool names_match(std::string_view a, std::string_view b, const SynonymLexicon& lexicon);

}  // namespace taskweave::text
