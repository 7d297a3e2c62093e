#include <doctest.h>

#include "taskweave/consistency.hpp"

using namespace taskweave;

namespace {

DataType T(SimpleKind k) { return DataType::of(k); }

// start -> A -> B -> C
AnnotatedProcess chain(std::vector<Param> aOut, std::vector<Param> bIn, std::vector<Param> bOut = {},
                       std::vector<Param> cIn = {}) {
  AnnotatedProcess p;
  p.graph.processId = "p";
  p.graph.nodes = {{"s", NodeKind::StartEvent},
                   {"A", NodeKind::ServiceTask},
                   {"B", NodeKind::ServiceTask},
                   {"C", NodeKind::ServiceTask}};
  p.graph.edges = {{"f1", "s", "A"}, {"f2", "A", "B"}, {"f3", "B", "C"}};
  p.specs["A"] = TaskSpec{"A", "", {}, std::move(aOut), {}};
  p.specs["B"] = TaskSpec{"B", "", std::move(bIn), std::move(bOut), {}};
  p.specs["C"] = TaskSpec{"C", "", std::move(cIn), {}, {}};
  return p;
}

}  // namespace

TEST_CASE("widening chain") {
  CHECK(widens(SimpleKind::Integer, SimpleKind::Double));
  CHECK(widens(SimpleKind::Date, SimpleKind::DateTime));
  CHECK(widens(SimpleKind::String, SimpleKind::String));
  CHECK_FALSE(widens(SimpleKind::Float, SimpleKind::Integer));
  CHECK_FALSE(widens(SimpleKind::String, SimpleKind::Float));
  CHECK_FALSE(widens(SimpleKind::Boolean, SimpleKind::Integer));
}

TEST_CASE("complex types match structurally") {
  auto out = DataType::complex({{"id", T(SimpleKind::Integer)}, {"name", T(SimpleKind::String)}});
  auto in = DataType::complex({{"id", T(SimpleKind::Long)}});
  CHECK(compatible_type(out, in));
  CHECK_FALSE(compatible_type(in, out));
  CHECK_FALSE(compatible_type(T(SimpleKind::String), in));
  CHECK_FALSE(compatible_type(in, T(SimpleKind::String)));
}

TEST_CASE("check_flows: string to float is inconsistent, integer to float is not") {
  auto bad = chain({{"price", T(SimpleKind::String)}}, {{"price", T(SimpleKind::Float)}});
  auto reports = check_flows(bad, {});
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].kind == InconsistencyReport::Kind::TypeMismatch);
  CHECK(reports[0].upstreamTask == "A");
  CHECK(reports[0].downstreamTask == "B");
  CHECK(reports[0].outputType == "string");
  CHECK(reports[0].inputType == "float");
  CHECK_FALSE(is_consistent(reports));

  auto good = chain({{"price", T(SimpleKind::Integer)}}, {{"price", T(SimpleKind::Float)}});
  CHECK(check_flows(good, {}).empty());
}

TEST_CASE("check_flows: boundary inputs are informational") {
  auto p = chain({}, {{"orderId", T(SimpleKind::String)}});
  auto reports = check_flows(p, {});
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].kind == InconsistencyReport::Kind::MissingProvider);
  CHECK(is_consistent(reports));
}

TEST_CASE("check_flows: upstream scope") {
  // A's string reaches C only through B.
  auto p = chain({{"price", T(SimpleKind::String)}}, {}, {{"note", T(SimpleKind::String)}},
                 {{"price", T(SimpleKind::Float)}});
  CHECK_FALSE(is_consistent(check_flows(p, {}, UpstreamScope::AllAncestors)));
  auto immediate = check_flows(p, {}, UpstreamScope::Immediate);
  CHECK(is_consistent(immediate));
  REQUIRE(immediate.size() == 1);
  CHECK(immediate[0].kind == InconsistencyReport::Kind::MissingProvider);
}

TEST_CASE("check_flows: synonyms link parameter names") {
  auto lex = text::load_lexicon("price|amount\n");
  auto p = chain({{"price", T(SimpleKind::String)}}, {{"amount", T(SimpleKind::Float)}});
  CHECK_FALSE(is_consistent(check_flows(p, lex)));
  CHECK(is_consistent(check_flows(p, {})));
}
