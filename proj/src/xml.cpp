#include "taskweave/xml.hpp"

#include <cstdint>

#include "taskweave/error.hpp"

namespace taskweave::xml {

std::optional<std::string> Element::attr(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.qname == name) return a.value;
  return std::nullopt;
}

const Element* Element::child(std::string_view nsUri, std::string_view localName) const {
  for (const auto& c : children)
    if (c->is(nsUri, localName)) return c.get();
  return nullptr;
}

std::vector<const Element*> Element::childrenNamed(std::string_view nsUri,
                                                   std::string_view localName) const {
  std::vector<const Element*> out;
  for (const auto& c : children)
    if (c->is(nsUri, localName)) out.push_back(c.get());
  return out;
}

std::optional<std::string> Element::lookupNamespace(std::string_view prefix) const {
  if (prefix == "xml") return std::string(kXmlNs);
  for (const Element* e = this; e != nullptr; e = e->parent) {
    auto it = e->nsDecls.find(std::string(prefix));
    if (it != e->nsDecls.end()) return it->second;
  }
  if (prefix.empty()) return std::string();
  return std::nullopt;
}

QName Element::resolve(std::string_view value) const {
  auto colon = value.find(':');
  std::string_view prefix = colon == std::string_view::npos ? std::string_view() : value.substr(0, colon);
  std::string_view local = colon == std::string_view::npos ? value : value.substr(colon + 1);
  auto uri = lookupNamespace(prefix);
  return QName{uri.value_or(std::string()), std::string(local)};
}

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

bool isNameStart(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || c >= 0x80;
}

bool isNameChar(unsigned char c) {
  return isNameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  std::unique_ptr<Element> run() {
    if (src_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;
    skipMisc();
    if (eof()) fail("document has no root element");
    if (peek() != '<') fail("content before root element");
    auto root = parseElement(nullptr, 0);
    skipMisc();
    if (!eof()) fail("content after root element");
    return root;
  }

 private:
  static constexpr int kMaxDepth = 512;

  [[noreturn]] void fail(const std::string& msg) const { failAt(msg, pos_); }

  [[noreturn]] void failAt(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed XML: " + msg, line, col);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  bool startsWith(std::string_view s) const { return src_.compare(pos_, s.size(), s) == 0; }

  void expect(std::string_view s) {
    if (!startsWith(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  void skipSpace() {
    while (!eof() && isSpace(peek())) ++pos_;
  }

  void skipUntil(std::string_view terminator, const char* what) {
    auto at = src_.find(terminator, pos_);
    if (at == std::string::npos) fail(std::string("unterminated ") + what);
    pos_ = at + terminator.size();
  }

  void skipDoctype() {
    pos_ += 9;  // "<!DOCTYPE"
    int bracket = 0;
    while (!eof()) {
      char c = peek();
      if (c == '[') ++bracket;
      else if (c == ']') --bracket;
      else if (c == '>' && bracket == 0) {
        ++pos_;
        return;
      }
      ++pos_;
    }
    fail("unterminated DOCTYPE");
  }

  // Whitespace, comments, PIs and the DOCTYPE outside the root element.
  void skipMisc() {
    for (;;) {
      skipSpace();
      if (startsWith("<?")) skipUntil("?>", "processing instruction");
      else if (startsWith("<!--")) skipUntil("-->", "comment");
      else if (startsWith("<!DOCTYPE")) skipDoctype();
      else return;
    }
  }

  std::string parseName() {
    std::size_t begin = pos_;
    if (eof() || !isNameStart(static_cast<unsigned char>(peek()))) fail("expected a name");
    while (!eof() && isNameChar(static_cast<unsigned char>(peek()))) ++pos_;
    return src_.substr(begin, pos_ - begin);
  }

  void decodeEntity(std::string& out) {
    std::size_t begin = pos_;
    auto semi = src_.find(';', pos_);
    if (semi == std::string::npos || semi - pos_ > 12) failAt("unterminated entity reference", begin);
    std::string_view ent(src_.data() + pos_ + 1, semi - pos_ - 1);
    pos_ = semi + 1;
    if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "amp") out += '&';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else if (!ent.empty() && ent[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) failAt("empty character reference", begin);
      for (char d : digits) {
        int v;
        if (d >= '0' && d <= '9') v = d - '0';
        else if (hex && d >= 'a' && d <= 'f') v = d - 'a' + 10;
        else if (hex && d >= 'A' && d <= 'F') v = d - 'A' + 10;
        else failAt("bad character reference", begin);
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) failAt("character reference out of range", begin);
      }
      appendUtf8(out, cp);
    } else {
      failAt("unknown entity '&" + std::string(ent) + ";'", begin);
    }
  }

  std::string parseAttrValue() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = src_[pos_++];
    std::string value;
    while (!eof() && peek() != quote) {
      char c = peek();
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        decodeEntity(value);
      } else {
        value += (c == '\t' || c == '\n' || c == '\r') ? ' ' : c;
        ++pos_;
      }
    }
    if (eof()) fail("unterminated attribute value");
    ++pos_;
    return value;
  }

  static void splitQName(const std::string& qname, std::string& prefix, std::string& local) {
    auto colon = qname.find(':');
    if (colon == std::string::npos) {
      prefix.clear();
      local = qname;
    } else {
      prefix = qname.substr(0, colon);
      local = qname.substr(colon + 1);
    }
  }

  std::unique_ptr<Element> parseElement(const Element* parent, int depth) {
    if (depth > kMaxDepth) fail("element nesting too deep");
    auto el = std::make_unique<Element>();
    el->parent = parent;
    el->startBegin = pos_;
    {
      std::size_t line = 1, col = 1;
      for (std::size_t i = lineScan_; i < pos_; ++i) {
        if (src_[i] == '\n') {
          ++lineCount_;
          colBase_ = i + 1;
        }
      }
      lineScan_ = pos_;
      line = lineCount_;
      col = pos_ - colBase_ + 1;
      el->line = line;
      el->column = col;
    }
    expect("<");
    el->qname = parseName();
    splitQName(el->qname, el->prefix, el->local);

    for (;;) {
      std::size_t before = pos_;
      skipSpace();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>' || startsWith("/>")) break;
      if (pos_ == before) fail("expected whitespace between attributes");
      std::size_t attrAt = pos_;
      Attribute a;
      a.qname = parseName();
      skipSpace();
      expect("=");
      skipSpace();
      a.value = parseAttrValue();
      splitQName(a.qname, a.prefix, a.local);
      for (const auto& other : el->attributes)
        if (other.qname == a.qname) failAt("duplicate attribute '" + a.qname + "'", attrAt);
      if (a.qname == "xmlns") el->nsDecls[""] = a.value;
      else if (a.prefix == "xmlns") el->nsDecls[a.local] = a.value;
      el->attributes.push_back(std::move(a));
    }

    auto uri = el->lookupNamespace(el->prefix);
    if (!uri) failAt("undeclared namespace prefix '" + el->prefix + "'", el->startBegin);
    el->ns = *uri;

    if (startsWith("/>")) {
      pos_ += 2;
      el->selfClosing = true;
      el->startEnd = el->endBegin = pos_;
      el->endEnd = pos_;
      el->endBegin = el->startBegin;
      return el;
    }
    ++pos_;
    el->startEnd = pos_;

    for (;;) {
      if (eof()) failAt("element '" + el->qname + "' is not closed", el->startBegin);
      char c = peek();
      if (c == '<') {
        if (startsWith("</")) {
          el->endBegin = pos_;
          pos_ += 2;
          std::string name = parseName();
          if (name != el->qname)
            fail("mismatched end tag: expected </" + el->qname + ">, found </" + name + ">");
          skipSpace();
          expect(">");
          el->endEnd = pos_;
          return el;
        }
        if (startsWith("<!--")) {
          skipUntil("-->", "comment");
        } else if (startsWith("<![CDATA[")) {
          pos_ += 9;
          auto end = src_.find("]]>", pos_);
          if (end == std::string::npos) fail("unterminated CDATA section");
          el->text.append(src_, pos_, end - pos_);
          pos_ = end + 3;
        } else if (startsWith("<?")) {
          skipUntil("?>", "processing instruction");
        } else if (startsWith("<!")) {
          fail("unexpected markup declaration");
        } else {
          el->children.push_back(parseElement(el.get(), depth + 1));
        }
      } else if (c == '&') {
        decodeEntity(el->text);
      } else {
        el->text += c;
        ++pos_;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t lineScan_ = 0;
  std::size_t lineCount_ = 1;
  std::size_t colBase_ = 0;
};

}  // namespace

Document parse(std::string text) {
  Document doc;
  doc.source = std::move(text);
  Parser parser(doc.source);
  doc.root = parser.run();
  return doc;
}

}  // namespace taskweave::xml
