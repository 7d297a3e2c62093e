#pragma once

// Small non-validating XML reader. It resolves namespaces and keeps the byte
// offsets of every tag so callers can splice new content into the original
// text without re-serializing it.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace taskweave::xml {

struct Attribute {
  std::string qname;
  std::string prefix;
  std::string local;
  std::string value;
};

struct QName {
  std::string ns;
  std::string local;
};

class Element {
 public:
  std::string qname;
  std::string prefix;
  std::string local;
  std::string ns;
  std::vector<Attribute> attributes;
  std::map<std::string, std::string> nsDecls;  // prefix ("" = default) -> uri
  std::vector<std::unique_ptr<Element>> children;
  std::string text;  // direct character data, entities decoded
  const Element* parent = nullptr;

  // Byte offsets into the source: [startBegin, startEnd) is the start tag,
  // [endBegin, endEnd) the end tag. For self-closing tags the end range
  // equals the start range.
  std::size_t startBegin = 0;
  std::size_t startEnd = 0;
  std::size_t endBegin = 0;
  std::size_t endEnd = 0;
  bool selfClosing = false;
  std::size_t line = 0;
  std::size_t column = 0;

  bool is(std::string_view nsUri, std::string_view localName) const {
    return ns == nsUri && local == localName;
  }

  std::optional<std::string> attr(std::string_view name) const;
  const Element* child(std::string_view nsUri, std::string_view localName) const;
  std::vector<const Element*> childrenNamed(std::string_view nsUri, std::string_view localName) const;

  // Resolves a prefix against the in-scope declarations of this element.
  std::optional<std::string> lookupNamespace(std::string_view prefix) const;
  // Resolves a QName-valued attribute such as "tns:GetPrice" or "xsd:string".
  QName resolve(std::string_view qnameValue) const;
};

struct Document {
  std::string source;
  std::unique_ptr<Element> root;
};

// Throws ParseError with line/column on malformed input.
Document parse(std::string text);

std::string escape(std::string_view raw);

inline constexpr std::string_view kXmlNs = "http://www.w3.org/XML/1998/namespace";

}  // namespace taskweave::xml
