#include <doctest.h>

#include "taskweave/error.hpp"
#include "taskweave/xml.hpp"

using namespace taskweave;

TEST_CASE("xml: namespaces, attributes and text") {
  auto doc = xml::parse(
      "<?xml version=\"1.0\"?>\n<!-- lead -->\n"
      "<a:root xmlns:a=\"urn:a\" xmlns=\"urn:d\" k=\"v &amp; w\">"
      "<child x='1'>t&lt;1&#65;<![CDATA[<raw>]]></child><a:empty/></a:root>");
  const auto& root = *doc.root;
  CHECK(root.is("urn:a", "root"));
  CHECK(root.attr("k") == "v & w");
  const auto* child = root.child("urn:d", "child");
  REQUIRE(child != nullptr);
  CHECK(child->text == "t<1A<raw>");
  CHECK(child->attr("x") == "1");
  const auto* empty = root.child("urn:a", "empty");
  REQUIRE(empty != nullptr);
  CHECK(empty->selfClosing);
  CHECK(empty->endBegin == empty->startBegin);
  CHECK(doc.source.substr(empty->startBegin, empty->startEnd - empty->startBegin) == "<a:empty/>");
  CHECK(root.resolve("a:thing").ns == "urn:a");
  CHECK(root.resolve("plain").ns == "urn:d");
}

TEST_CASE("xml: offsets cover start and end tags") {
  std::string src = "<r>\n  <x id=\"1\">body</x>\n</r>";
  auto doc = xml::parse(src);
  const auto* x = doc.root->children.front().get();
  CHECK(src.substr(x->startBegin, x->startEnd - x->startBegin) == "<x id=\"1\">");
  CHECK(src.substr(x->endBegin, x->endEnd - x->endBegin) == "</x>");
  CHECK(x->line == 2);
  CHECK(x->column == 3);
}

TEST_CASE("xml: malformed input reports a position") {
  CHECK_THROWS_AS(xml::parse("<a><b></a>"), ParseError);
  CHECK_THROWS_AS(xml::parse("<a x=1/>"), ParseError);
  CHECK_THROWS_AS(xml::parse(""), ParseError);
  CHECK_THROWS_AS(xml::parse("<p:a/>"), ParseError);
  try {
    xml::parse("<a>\n<b>\n</a>");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("xml: escape") { CHECK(xml::escape("a<b>&\"'") == "a&lt;b&gt;&amp;&quot;&apos;"); }
