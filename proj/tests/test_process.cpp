#include <doctest.h>

#include "support.hpp"
#include "taskweave/error.hpp"
#include "taskweave/process.hpp"

using namespace taskweave;

namespace {

std::string bpmn(const std::string& body) {
  return "<definitions xmlns=\"http://www.omg.org/spec/BPMN/20100524/MODEL\"><process id=\"p\">" + body +
         "</process></definitions>";
}

}  // namespace

TEST_CASE("parse_bpmn: demo process") {
  auto g = parse_bpmn(tw_test::slurp(tw_test::demo_dir() / "process.bpmn")).value;
  CHECK(g.processId == "trip-booking");
  CHECK(g.nodes.size() == 9);
  CHECK(g.edges.size() == 9);
  CHECK(g.serviceTasks() == std::vector<std::string>{"T1", "T2", "T3", "T4", "T5"});
  CHECK(g.successors("split") == std::vector<std::string>{"T4", "T5"});
  CHECK(g.predecessors("join") == std::vector<std::string>{"T4", "T5"});
  CHECK(g.nodes.at("split") == NodeKind::ParallelGateway);
  CHECK(g.nodeNames.at("T1") == "Search flights");
}

TEST_CASE("parse_bpmn: dangling flow and unsupported elements") {
  CHECK_THROWS_AS(parse_bpmn(bpmn("<startEvent id=\"s\"/><sequenceFlow id=\"f\" sourceRef=\"s\" targetRef=\"x\"/>")),
                  ReferenceError);
  try {
    parse_bpmn(bpmn("<startEvent id=\"s\"/><sequenceFlow id=\"f9\" sourceRef=\"s\" targetRef=\"x\"/>"));
  } catch (const ReferenceError& e) {
    CHECK(e.name() == "f9");
  }
  auto r = parse_bpmn(bpmn("<startEvent id=\"s\"/><userTask id=\"u\"/><subProcess id=\"sp\"/>"
                           "<sequenceFlow id=\"f1\" sourceRef=\"s\" targetRef=\"u\"/>"
                           "<sequenceFlow id=\"f2\" sourceRef=\"u\" targetRef=\"sp\"/>"));
  CHECK(r.value.nodes.at("u") == NodeKind::GenericTask);
  CHECK(r.value.nodes.count("sp") == 0);
  CHECK(r.value.edges.size() == 1);
  CHECK(r.warnings.size() >= 2);
  CHECK_THROWS_AS(parse_bpmn("<definitions xmlns=\"http://www.omg.org/spec/BPMN/20100524/MODEL\"/>"), ParseError);
}

TEST_CASE("isomorphic ignores element order") {
  auto a = parse_bpmn(bpmn("<startEvent id=\"s\"/><endEvent id=\"e\"/>"
                           "<sequenceFlow id=\"f\" sourceRef=\"s\" targetRef=\"e\"/>"))
               .value;
  auto b = parse_bpmn(bpmn("<sequenceFlow id=\"f\" sourceRef=\"s\" targetRef=\"e\"/>"
                           "<endEvent id=\"e\"/><startEvent id=\"s\"/>"))
               .value;
  CHECK(isomorphic(a, b));
  b.edges[0].targetRef = "s";
  CHECK_FALSE(isomorphic(a, b));
}

TEST_CASE("annotations: parsing and weight validation") {
  auto sidecar = parse_annotations(R"({"processId":"p","tasks":[
    {"taskId":"A","objective":"x","inputs":[{"name":"rec","type":{"id":"integer","when":"date"}}],
     "outputs":[{"name":"ok","type":"boolean"}],"weights":{"reliability":0.6,"latency_ms":0.4}},
    {"taskId":"B","weights":{"reliability":0.9,"cost":0.9}},
    {"taskId":"C","weights":{"speed":1.0}},
    {"taskId":"D"}]})");
  REQUIRE(sidecar.tasks.size() == 4);
  CHECK(sidecar.tasks[0].inputs[0].type.fields.size() == 2);
  auto errors = validate_annotations(sidecar.tasks, QoSSchema::defaults());
  CHECK(has_errors(errors));
  int bErrors = 0, cErrors = 0, dInfos = 0;
  for (const auto& e : errors) {
    if (e.taskId == "A") FAIL("task A is valid");
    if (e.taskId == "B") ++bErrors;
    if (e.taskId == "C") ++cErrors;
    if (e.taskId == "D" && e.severity == SpecError::Severity::Info) ++dInfos;
  }
  CHECK(bErrors == 1);
  CHECK(cErrors == 1);
  CHECK(dInfos == 1);
  CHECK(sidecar.tasks[3].weights.size() == 4);
  CHECK(sidecar.tasks[3].weights.at("cost") == 0.25);

  CHECK_THROWS_AS(parse_annotations("{\"tasks\":[{\"taskId\":\"A\",\"inputs\":[{\"name\":\"x\",\"type\":\"blob\"}]}]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_annotations("{\"tasks\":[{\"taskId\":\"A\",\"inputs\":[{\"name\":\"x\",\"type\":{}}]}]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_annotations("[1]"), ParseError);
}

TEST_CASE("apply_annotations") {
  auto g = parse_bpmn(bpmn("<startEvent id=\"s\"/><serviceTask id=\"t\"/><serviceTask id=\"u\"/>"
                           "<sequenceFlow id=\"f1\" sourceRef=\"s\" targetRef=\"t\"/>"
                           "<sequenceFlow id=\"f2\" sourceRef=\"t\" targetRef=\"u\"/>"))
               .value;
  TaskSpec t{"t", "Quote the ticket price", {}, {}, {{"cost", 1.0}}};
  TaskSpec u{"u", "Pay", {}, {}, {{"cost", 1.0}}};
  auto sw = text::StopWords::defaults();
  auto ap = apply_annotations(g, {t, u}, sw, {});
  CHECK(ap.taskKeywords.at("t") == text::KeywordSet{"price", "quot", "ticket"});
  CHECK_THROWS_AS(apply_annotations(g, {t}, sw, {}), MissingSpecError);
  TaskSpec bad{"s", "", {}, {}, {}};
  CHECK_THROWS_AS(apply_annotations(g, {t, u, bad}, sw, {}), BadTargetError);
}
